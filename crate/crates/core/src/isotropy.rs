//! Rational isotropic-vector search for symmetric nondegenerate forms.
//!
//! Finding a nonzero rational `v` with `v^T G v = 0` is, in general, as
//! hard as factoring the determinant; this module layers progressively
//! stronger (and costlier) attacks that together cover forms rationally
//! equivalent to the split standard form at the sizes this crate handles:
//!
//! 1. basis and pair scans with an exact square-discriminant test,
//! 2. indefinite lattice reduction (LLL with Lovasz conditions on absolute
//!    values) with randomized unimodular restarts, rescanning and sweeping
//!    small integer combinations of each reduced basis,
//! 3. p-adic minimization of the integral Gram matrix: at every prime of
//!    the (square) determinant, kernel vectors mod p with `Q(v) = 0 mod
//!    p^2` let a row/column division shrink the determinant by `p^2`; once
//!    the determinant reaches +-1 the lattice is unimodular and reduction
//!    exposes an isotropic vector,
//! 4. the same pipeline on the inverse form: `v` isotropic for `G^-1`
//!    maps to the isotropic vector `G^-1 v` of `G`.
//!
//! Every hit is verified exactly before being returned, so a failure in
//! any layer can only produce a miss, never a wrong answer.

use crate::exact::{rat, rational_sqrt, Matrix, Rational, Vector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Nonzero rational `v` with `v^T gram v = 0`, if the search finds one.
pub(crate) fn isotropic_vector(gram: &Matrix) -> Option<Vector> {
    if let Some(v) = search_form(gram) {
        debug_assert!(gram.bilinear(&v, &v).is_zero());
        return Some(v);
    }
    let inv = gram.inverse()?;
    if let Some(v) = search_form(&inv) {
        let w = inv.mul_vec(&v).primitive();
        debug_assert!(gram.bilinear(&w, &w).is_zero());
        return Some(w);
    }
    None
}

fn search_form(gram: &Matrix) -> Option<Vector> {
    let d = gram.rows();
    let identity: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
    if let Some(v) = scan_basis_and_pairs(gram, &identity) {
        return Some(v);
    }
    if let Some(v) = reduce_and_scan(gram) {
        return Some(v);
    }
    minimize_then_search(gram)
}

/// Diagonal zeros, then binary restrictions solved by the quadratic
/// formula whenever the discriminant is a perfect rational square.
fn scan_basis_and_pairs(gram: &Matrix, basis: &[Vector]) -> Option<Vector> {
    let d = gram.rows();
    for i in 0..d {
        if gram[(i, i)].is_zero() {
            return Some(basis[i].clone());
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let a = gram[(i, i)].clone();
            let h = gram[(i, j)].clone();
            let b = gram[(j, j)].clone();
            // a x^2 + 2 h x + b = 0 along x*basis_i + basis_j; a != 0 here.
            let disc = &h * &h - &a * &b;
            if let Some(root) = rational_sqrt(&disc) {
                let x = (root - &h) / &a;
                return Some(basis[i].scale(&x).add(&basis[j]).primitive());
            }
        }
    }
    None
}

const LLL_MAX_SWEEPS: usize = 4000;
const LLL_RESTARTS: usize = 8;

/// Indefinite lattice reduction with randomized unimodular restarts. Each
/// attempt either witnesses an isotropic vector during Gram-Schmidt or
/// produces a reduced basis that is rescanned and swept with integer
/// combinations. The stir is deterministic, so results are reproducible.
fn reduce_and_scan(gram: &Matrix) -> Option<Vector> {
    let d = gram.rows();
    let g0 = integer_scaled(gram);
    let mut stir_state: u64 = 0x9e37_79b9_7f4a_7c15;
    for attempt in 0..LLL_RESTARTS {
        let mut basis = Matrix::identity(d); // rows are basis vectors, original coords
        let mut g = g0.clone();
        if attempt > 0 {
            stir(&mut g, &mut basis, &mut stir_state, attempt);
        }
        if let Some(coeffs) = lll_reduce(&mut g, &mut basis) {
            return Some(combine_rows(&basis, &coeffs).primitive());
        }
        let rows: Vec<Vector> = (0..d).map(|i| basis.row(i)).collect();
        if let Some(v) = scan_basis_and_pairs(&g, &rows) {
            return Some(v);
        }
        if let Some(v) = small_combination_sweep(&g, &rows) {
            return Some(v);
        }
    }
    None
}

/// Applies a handful of deterministic pseudo-random shears; a cheap
/// unimodular change of basis that gives the next reduction attempt a
/// different starting point.
fn stir(g: &mut Matrix, basis: &mut Matrix, state: &mut u64, round: usize) {
    let d = g.rows();
    let mut next = || {
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        *state
    };
    for _ in 0..(d + round) {
        let i = (next() % d as u64) as usize;
        let mut j = (next() % d as u64) as usize;
        if i == j {
            j = (j + 1) % d;
        }
        let c = rat((next() % 3) as i64 + 1);
        subtract_row(g, basis, i, j, &c);
    }
}

/// LLL-style loop: Gram-Schmidt in the indefinite metric, size reduction,
/// Lovasz-type swaps on absolute values. Returns the coefficients of an
/// isotropic Gram-Schmidt vector if one appears; otherwise mutates `g`
/// and `basis` toward the reduced form.
fn lll_reduce(g: &mut Matrix, basis: &mut Matrix) -> Option<Vector> {
    let d = g.rows();
    for _ in 0..LLL_MAX_SWEEPS {
        let (mut mu, norms) = match gram_schmidt(g) {
            GramSchmidt::Breakdown(coeffs) => return Some(coeffs),
            GramSchmidt::Complete { mu, norms } => (mu, norms),
        };

        // Size reduction: |mu_ij| <= 1/2.
        let mut changed = false;
        for i in 1..d {
            for j in (0..i).rev() {
                let r = round_to_integer(&mu[i][j]);
                if r.is_zero() {
                    continue;
                }
                subtract_row(g, basis, i, j, &r);
                for k in 0..=j {
                    let t = &mu[j][k] * &r;
                    mu[i][k] = &mu[i][k] - &t;
                }
                changed = true;
            }
        }
        if changed {
            continue;
        }

        // Swap when the would-be leading Gram-Schmidt norm drops below
        // 3/4 of the current one.
        let three_quarters = crate::exact::ratio(3, 4);
        let mut swapped = false;
        for i in 0..(d - 1) {
            let m = &mu[i + 1][i];
            let projected = &norms[i + 1] + m * m * &norms[i];
            if projected.abs() < three_quarters.clone() * norms[i].abs() {
                swap_row(g, basis, i, i + 1);
                swapped = true;
                break;
            }
        }
        if !swapped {
            break;
        }
    }
    None
}

enum GramSchmidt {
    /// Coefficients (in the current basis) of a nonzero isotropic
    /// Gram-Schmidt vector.
    Breakdown(Vector),
    Complete {
        mu: Vec<Vec<Rational>>,
        norms: Vec<Rational>,
    },
}

/// Gram-Schmidt over the indefinite inner product described by `g`,
/// computed entirely from the Gram matrix.
fn gram_schmidt(g: &Matrix) -> GramSchmidt {
    let d = g.rows();
    // ip[i][j] = B(b_i, b_j*) for j <= i; star[j] = coefficients of b_j*.
    let mut mu = vec![vec![Rational::zero(); d]; d];
    let mut norms = vec![Rational::zero(); d];
    let mut ip = vec![vec![Rational::zero(); d]; d];
    let mut star: Vec<Vector> = Vec::with_capacity(d);
    for i in 0..d {
        let mut star_i = Vector::unit(d, i);
        for j in 0..=i {
            let mut acc = g[(i, j)].clone();
            for k in 0..j {
                let t = &mu[j][k] * &ip[i][k];
                acc -= t;
            }
            ip[i][j] = acc;
            if j < i {
                mu[i][j] = &ip[i][j] / &norms[j];
                star_i = star_i.sub(&star[j].scale(&mu[i][j]));
            }
        }
        norms[i] = ip[i][i].clone();
        if norms[i].is_zero() {
            return GramSchmidt::Breakdown(star_i);
        }
        star.push(star_i);
    }
    GramSchmidt::Complete { mu, norms }
}

/// Scales a rational symmetric matrix to an integer one by the lcm of all
/// denominators; positive scaling preserves the null cone.
fn integer_scaled(gram: &Matrix) -> Matrix {
    let d = gram.rows();
    let mut lcm = BigInt::one();
    for i in 0..d {
        for j in 0..d {
            lcm = lcm.lcm(gram[(i, j)].denom());
        }
    }
    let factor = Rational::from_integer(lcm);
    gram.scale(&factor)
}

fn round_to_integer(r: &Rational) -> Rational {
    (r + crate::exact::ratio(1, 2)).floor()
}

/// `b_i -= r * b_j` on both the Gram matrix and the tracked basis.
fn subtract_row(g: &mut Matrix, basis: &mut Matrix, i: usize, j: usize, r: &Rational) {
    let d = g.rows();
    for c in 0..basis.cols() {
        let t = r * &basis[(j, c)];
        basis[(i, c)] = &basis[(i, c)] - &t;
    }
    for c in 0..d {
        let t = r * &g[(j, c)];
        g[(i, c)] = &g[(i, c)] - &t;
    }
    for c in 0..d {
        let t = r * &g[(c, j)];
        g[(c, i)] = &g[(c, i)] - &t;
    }
}

fn swap_row(g: &mut Matrix, basis: &mut Matrix, i: usize, j: usize) {
    let d = g.rows();
    for c in 0..basis.cols() {
        let tmp = basis[(i, c)].clone();
        basis[(i, c)] = basis[(j, c)].clone();
        basis[(j, c)] = tmp;
    }
    for c in 0..d {
        let tmp = g[(i, c)].clone();
        g[(i, c)] = g[(j, c)].clone();
        g[(j, c)] = tmp;
    }
    for c in 0..d {
        let tmp = g[(c, i)].clone();
        g[(c, i)] = g[(c, j)].clone();
        g[(c, j)] = tmp;
    }
}

fn combine(basis: &[Vector], coeffs: &Vector) -> Vector {
    assert_eq!(basis.len(), coeffs.dim());
    let mut acc = Vector::zeros(basis[0].dim());
    for (b, c) in basis.iter().zip(coeffs.iter()) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn combine_rows(basis: &Matrix, coeffs: &Vector) -> Vector {
    let rows: Vec<Vector> = (0..basis.rows()).map(|i| basis.row(i)).collect();
    combine(&rows, coeffs)
}

/// Evaluates the form on all integer combinations with coefficients in a
/// small box over the reduced basis. Entries that fit in `i128` take a
/// fast path; otherwise a narrower exact sweep runs.
fn small_combination_sweep(g: &Matrix, rows: &[Vector]) -> Option<Vector> {
    let d = g.rows();
    if let Some(gi) = to_i128(g) {
        let bound: i128 = if d <= 4 { 6 } else { 4 };
        let mut coeffs = vec![0i128; d];
        if sweep_i128(&gi, bound, &mut coeffs, 0) {
            let v = Vector::new(coeffs.iter().map(|&c| rat(c as i64)).collect());
            let ambient = combine(rows, &v);
            if !ambient.is_zero() {
                return Some(ambient.primitive());
            }
        }
        return None;
    }
    let bound = 2i128;
    let mut coeffs = vec![0i128; d];
    if sweep_exact(g, bound, &mut coeffs, 0) {
        let v = Vector::new(coeffs.iter().map(|&c| rat(c as i64)).collect());
        let ambient = combine(rows, &v);
        if !ambient.is_zero() {
            return Some(ambient.primitive());
        }
    }
    None
}

fn to_i128(g: &Matrix) -> Option<Vec<Vec<i128>>> {
    let d = g.rows();
    let limit: i128 = 1 << 100;
    let mut out = vec![vec![0i128; d]; d];
    for i in 0..d {
        for j in 0..d {
            let e = &g[(i, j)];
            if !e.denom().is_one() {
                return None;
            }
            let v = e.numer().to_i128()?;
            if v.abs() > limit {
                return None;
            }
            out[i][j] = v;
        }
    }
    Some(out)
}

fn sweep_i128(g: &[Vec<i128>], bound: i128, coeffs: &mut [i128], idx: usize) -> bool {
    if idx == coeffs.len() {
        if coeffs.iter().all(|&c| c == 0) {
            return false;
        }
        let mut acc: i128 = 0;
        for (i, &ci) in coeffs.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &cj) in coeffs.iter().enumerate() {
                if cj != 0 {
                    acc += ci * g[i][j] * cj;
                }
            }
        }
        return acc == 0;
    }
    // Fix the first nonzero coefficient positive to halve the search.
    let seen_nonzero = coeffs[..idx].iter().any(|&c| c != 0);
    let lo = if seen_nonzero { -bound } else { 0 };
    let mut c = lo;
    while c <= bound {
        coeffs[idx] = c;
        if sweep_i128(g, bound, coeffs, idx + 1) {
            return true;
        }
        c += 1;
    }
    coeffs[idx] = 0;
    false
}

fn sweep_exact(g: &Matrix, bound: i128, coeffs: &mut [i128], idx: usize) -> bool {
    if idx == coeffs.len() {
        if coeffs.iter().all(|&c| c == 0) {
            return false;
        }
        let v = Vector::new(coeffs.iter().map(|&c| rat(c as i64)).collect());
        return g.bilinear(&v, &v).is_zero();
    }
    let seen_nonzero = coeffs[..idx].iter().any(|&c| c != 0);
    let lo = if seen_nonzero { -bound } else { 0 };
    let mut c = lo;
    while c <= bound {
        coeffs[idx] = c;
        if sweep_exact(g, bound, coeffs, idx + 1) {
            return true;
        }
        c += 1;
    }
    coeffs[idx] = 0;
    false
}

// --- p-adic minimization -------------------------------------------------

/// Shrinks the determinant of the integral Gram matrix prime by prime,
/// then reruns the reduction search on the minimized lattice and maps any
/// hit back to the original coordinates. Only forms whose determinant is
/// (up to sign) a perfect square are attacked here; that covers everything
/// rationally equivalent to a split form.
fn minimize_then_search(gram: &Matrix) -> Option<Vector> {
    let d = gram.rows();
    let mut g = primitive_part(&integer_scaled(gram));
    // transform columns map minimized coordinates back to the original.
    let mut transform = Matrix::identity(d);

    let det = g.det();
    let det_int = det.numer().abs();
    let sq = det_int.sqrt();
    if &sq * &sq != det_int {
        return None; // not a square determinant: not in the split class
    }
    let mut primes = factor_trial(&sq);
    primes.sort();
    primes.dedup();

    for p in primes {
        let mut guard = 0;
        loop {
            guard += 1;
            if guard > 200 {
                break;
            }
            let det_now = g.det().numer().abs();
            if (&det_now % &p).is_zero() {
                match minimize_at_prime(&mut g, &mut transform, &p) {
                    true => {
                        g = primitive_part(&g);
                        continue;
                    }
                    false => break,
                }
            }
            break;
        }
    }

    // The minimized lattice is searched with the full reduction arsenal.
    let candidate = {
        let d_id: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
        scan_basis_and_pairs(&g, &d_id).or_else(|| reduce_and_scan(&g))
    }?;
    let back = transform.mul_vec(&candidate).primitive();
    if gram.bilinear(&back, &back).is_zero() && !back.is_zero() {
        Some(back)
    } else {
        None
    }
}

/// Divides out the integer content of an integral symmetric matrix.
fn primitive_part(g: &Matrix) -> Matrix {
    let d = g.rows();
    let mut content = BigInt::zero();
    for i in 0..d {
        for j in 0..d {
            content = content.gcd(g[(i, j)].numer());
        }
    }
    if content.is_one() || content.is_zero() {
        return g.clone();
    }
    g.scale(&Rational::new(BigInt::one(), content))
}

/// One minimization step at prime `p`: find a kernel vector `v` of
/// `G mod p` with `Q(v) = 0 mod p^2`, move it to the first basis vector by
/// a unimodular change, and divide its row and column by `p` (determinant
/// drops by `p^2`). Returns false when no such vector is found.
fn minimize_at_prime(g: &mut Matrix, transform: &mut Matrix, p: &BigInt) -> bool {
    let d = g.rows();
    let kernel = kernel_mod_p(g, p);
    if kernel.is_empty() {
        return false;
    }
    let v = match kernel_vector_null_mod_p2(g, &kernel, p) {
        Some(v) => v,
        None => return false,
    };
    debug_assert!(!v.is_zero());
    let u = complete_unimodular(&v);
    // New Gram in the basis whose first vector is v; its first column is
    // divisible by p and the corner by p^2, so dividing the first basis
    // vector by p keeps the matrix integral and shrinks det by p^2.
    let g1 = g.congruence(&u);
    debug_assert!((g1[(0, 0)].numer() % (p * p)).is_zero());
    let p_rat = Rational::from_integer(p.clone());
    let mut scale = Matrix::identity(d);
    scale[(0, 0)] = Rational::one() / &p_rat;
    let g2 = g1.congruence(&scale);
    debug_assert!((0..d).all(|i| (0..d).all(|j| g2[(i, j)].denom().is_one())));
    *g = g2;
    *transform = transform.mul(&u).mul(&scale);
    true
}

/// Basis of the kernel of `G mod p`, lifted to integer vectors with
/// entries in `[0, p)`.
fn kernel_mod_p(g: &Matrix, p: &BigInt) -> Vec<Vector> {
    let d = g.rows();
    let mut a: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| g[(i, j)].numer().mod_floor(p)).collect())
        .collect();
    // Gaussian elimination over F_p with column tracking.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(pr) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pr, row);
        let inv = mod_inverse(&a[row][col], p).expect("pivot invertible mod prime");
        for j in col..d {
            a[row][j] = (&a[row][j] * &inv).mod_floor(p);
        }
        for r in 0..d {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..d {
                let t = (&f * &a[row][j]).mod_floor(p);
                a[r][j] = (&a[r][j] - t).mod_floor(p);
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == d {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigInt::zero(); d];
        v[free] = BigInt::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (-a[r][free].clone()).mod_floor(p);
        }
        basis.push(Vector::new(
            v.into_iter().map(Rational::from_integer).collect(),
        ));
    }
    basis
}

/// Finds an integer kernel vector with `Q(v) = 0 mod p^2`. The quotient
/// form `Q/p mod p` on the kernel is an F_p quadratic form; its isotropic
/// vectors are exactly what is needed. Small kernels and `p = 2` are
/// enumerated outright; larger odd cases go through diagonalization and a
/// square root mod p.
fn kernel_vector_null_mod_p2(g: &Matrix, kernel: &[Vector], p: &BigInt) -> Option<Vector> {
    let p2 = p * p;
    let q_mod_p2 = |v: &Vector| -> bool {
        let q = g.bilinear(v, v);
        (q.numer() % &p2).is_zero()
    };
    for v in kernel {
        if q_mod_p2(v) {
            return Some(v.clone());
        }
    }
    let k = kernel.len();
    if k < 2 {
        return None;
    }

    // Exhaustive enumeration when the count of F_p combinations is small.
    let small = p.to_usize().map(|pu| pu.checked_pow(k as u32));
    if let Some(Some(total)) = small {
        if total <= 20_000 {
            let pu = p.to_usize().unwrap();
            let mut idx = vec![0usize; k];
            loop {
                // advance odometer
                let mut carry = true;
                for digit in idx.iter_mut() {
                    if carry {
                        *digit += 1;
                        if *digit == pu {
                            *digit = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
                if idx.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut v = Vector::zeros(kernel[0].dim());
                for (c, kv) in idx.iter().zip(kernel) {
                    if *c != 0 {
                        v = v.add(&kv.scale(&rat(*c as i64)));
                    }
                }
                if !v.is_zero() && q_mod_p2(&v) {
                    return Some(v);
                }
            }
            return None;
        }
    }

    // Large odd p: diagonalize the quotient form over F_p and solve.
    let quotient = Matrix::from_fn(k, k, |i, j| {
        let b = g.bilinear(&kernel[i], &kernel[j]);
        Rational::from_integer((b.numer() / p).mod_floor(p))
    });
    let (diag, basis_rows) = diagonalize_mod_p(&quotient, p);
    let coeffs = isotropic_mod_p(&diag, p)?;
    // coeffs are over the diagonalizing basis of the quotient form.
    let mut in_kernel = Vector::zeros(k);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            in_kernel = in_kernel.add(&basis_rows[i].scale(c));
        }
    }
    let mut v = Vector::zeros(kernel[0].dim());
    for (c, kv) in in_kernel.iter().zip(kernel) {
        if !c.is_zero() {
            v = v.add(&kv.scale(c));
        }
    }
    let v = reduce_entries_mod(&v, p);
    if !v.is_zero() && q_mod_p2(&v) {
        Some(v)
    } else {
        None
    }
}

fn reduce_entries_mod(v: &Vector, p: &BigInt) -> Vector {
    Vector::new(
        v.iter()
            .map(|e| Rational::from_integer(e.numer().mod_floor(p)))
            .collect(),
    )
}

/// Symmetric congruence diagonalization over F_p (odd p). Returns the
/// diagonal entries and the basis rows achieving them.
fn diagonalize_mod_p(a: &Matrix, p: &BigInt) -> (Vec<BigInt>, Vec<Vector>) {
    let k = a.rows();
    let mut m: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| a[(i, j)].numer().mod_floor(p)).collect())
        .collect();
    let mut basis: Vec<Vector> = (0..k).map(|i| Vector::unit(k, i)).collect();
    for step in 0..k {
        if m[step][step].is_zero() {
            if let Some(j) = ((step + 1)..k).find(|&j| !m[j][j].is_zero()) {
                m.swap(step, j);
                for row in m.iter_mut() {
                    row.swap(step, j);
                }
                basis.swap(step, j);
            } else if let Some(j) = ((step + 1)..k).find(|&j| !m[step][j].is_zero()) {
                // b_step += b_j; the new diagonal entry 2*m[step][j] is
                // nonzero because p is odd.
                for c in 0..k {
                    m[step][c] = (&m[step][c] + &m[j][c]).mod_floor(p);
                }
                for r in 0..k {
                    m[r][step] = (&m[r][step] + &m[r][j]).mod_floor(p);
                }
                let b = basis[step].add(&basis[j]);
                basis[step] = b;
            } else {
                continue;
            }
        }
        let pivot = m[step][step].clone();
        let pivot_inv = match mod_inverse(&pivot, p) {
            Some(x) => x,
            None => continue,
        };
        for i in (step + 1)..k {
            if m[i][step].is_zero() {
                continue;
            }
            let f = (&m[i][step] * &pivot_inv).mod_floor(p);
            for c in 0..k {
                let t = (&f * &m[step][c]).mod_floor(p);
                m[i][c] = (&m[i][c] - t).mod_floor(p);
            }
            for r in 0..k {
                let t = (&f * &m[r][step]).mod_floor(p);
                m[r][i] = (&m[r][i] - t).mod_floor(p);
            }
            let adj = basis[step].scale(&Rational::from_integer(f.clone()));
            basis[i] = basis[i].sub(&adj);
            basis[i] = reduce_entries_mod(&basis[i], p);
        }
    }
    ((0..k).map(|i| m[i][i].clone()).collect(), basis)
}

/// Isotropic vector of a diagonal quadratic form over F_p (odd p), as
/// exact rational coefficients reduced mod p.
fn isotropic_mod_p(diag: &[BigInt], p: &BigInt) -> Option<Vector> {
    let k = diag.len();
    // A zero diagonal entry is immediately isotropic.
    if let Some(i) = diag.iter().position(Zero::is_zero) {
        return Some(Vector::unit(k, i));
    }
    // Two entries with -d_j/d_i a square.
    for i in 0..k {
        for j in (i + 1)..k {
            let di_inv = mod_inverse(&diag[i], p)?;
            let target = ((-&diag[j]) * &di_inv).mod_floor(p);
            if let Some(x) = sqrt_mod_p(&target, p) {
                let mut v = Vector::zeros(k);
                v[i] = Rational::from_integer(x);
                v[j] = Rational::one();
                return Some(v);
            }
        }
    }
    if k < 3 {
        return None;
    }
    // Ternary case: d0 x^2 + d1 y^2 + d2 = 0 is always solvable mod an odd
    // prime; walk x until the complement is a square.
    let d0 = &diag[0];
    let d1_inv = mod_inverse(&diag[1], p)?;
    let d2 = &diag[2];
    let mut x = BigInt::zero();
    let cap = 4 * p.bits() as usize + 200;
    for _ in 0..cap {
        let rhs = ((-(d0 * &x * &x + d2)) * &d1_inv).mod_floor(p);
        if let Some(y) = sqrt_mod_p(&rhs, p) {
            let mut v = Vector::zeros(k);
            v[0] = Rational::from_integer(x);
            v[1] = Rational::from_integer(y);
            v[2] = Rational::one();
            return Some(v);
        }
        x += 1;
    }
    None
}

/// Tonelli-Shanks square root modulo an odd prime; `None` for
/// non-residues.
fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let legendre_exp = (p - &one) / 2;
    if mod_pow(&a, &legendre_exp, p) != one {
        return None;
    }
    if (p % 4u8) == BigInt::from(3) {
        let e = (p + &one) / 4;
        return Some(mod_pow(&a, &e, p));
    }
    // p = 1 mod 4: full Tonelli-Shanks.
    let mut q = p - &one;
    let mut s = 0u32;
    while (&q % 2u8).is_zero() {
        q /= 2;
        s += 1;
    }
    // Find a quadratic non-residue z.
    let mut z = BigInt::from(2);
    while mod_pow(&z, &legendre_exp, p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(&z, &q, p);
    let mut t = mod_pow(&a, &q, p);
    let mut r = mod_pow(&a, &((&q + &one) / 2), p);
    while t != one {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2) % p;
            i += 1;
            if i == m {
                return None; // should not happen for residues
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}

fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> BigInt {
    base.modpow(exp, modulus)
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return None;
    }
    let e = a.extended_gcd(p);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

/// Completes a primitive integer vector to a unimodular matrix whose first
/// column is the vector, by tracking the elementary row operations of the
/// integer Euclidean reduction `M v = +-e_0` and inverting.
fn complete_unimodular(v: &Vector) -> Matrix {
    let d = v.dim();
    let mut work: Vec<BigInt> = v.iter().map(|e| e.numer().clone()).collect();
    debug_assert!(v.iter().all(|e| e.denom().is_one()));
    let mut m = Matrix::identity(d);
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| !work[i].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        // Reduce the largest entry by the smallest.
        let &imin = nonzero
            .iter()
            .min_by_key(|&&i| work[i].abs())
            .expect("nonempty");
        for &i in &nonzero {
            if i == imin {
                continue;
            }
            let q = div_round(&work[i], &work[imin]);
            if q.is_zero() {
                continue;
            }
            work[i] = &work[i] - &q * &work[imin];
            // row_i -= q * row_imin on m
            let qr = Rational::from_integer(q);
            for c in 0..d {
                let t = &qr * &m[(imin, c)];
                m[(i, c)] = &m[(i, c)] - &t;
            }
        }
    }
    let k = (0..d).find(|&i| !work[i].is_zero()).expect("nonzero vector");
    if k != 0 {
        work.swap(0, k);
        for c in 0..d {
            let tmp = m[(0, c)].clone();
            m[(0, c)] = m[(k, c)].clone();
            m[(k, c)] = tmp;
        }
    }
    if work[0].is_negative() {
        for c in 0..d {
            m[(0, c)] = -m[(0, c)].clone();
        }
    }
    debug_assert!(work[0].abs().is_one(), "input must be primitive");
    let u = m.inverse().expect("unimodular by construction");
    debug_assert_eq!(u.col(0), v.clone());
    u
}

/// Rounded integer division, biased toward smaller remainders.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let double_r = r.abs() * 2;
    if double_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Trial-division factorization; the inputs here are square roots of
/// determinants and stay small.
fn factor_trial(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= BigInt::one() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            out.push(p.clone());
            n /= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}
