//! Eigenvalues of dense real symmetric matrices.
//!
//! Householder reduction to tridiagonal form working on the lower triangle,
//! followed by implicit-shift QL iteration. Only eigenvalues are computed.

use crate::{Error, Result};

/// QL sweeps allowed per eigenvalue before giving up.
pub const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues of the symmetric matrix stored row-major in `a` (`n x n`),
/// sorted ascending. Only the lower triangle is read; `a` is overwritten.
pub fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix storage does not match n");
    let rescale = power_of_two_rescale(a.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    if rescale != 1.0 {
        a.iter_mut().for_each(|x| *x /= rescale);
    }
    let (mut diag, mut sub) = tridiagonalize(a, n);
    tridiagonal_ql(&mut diag, &mut sub)?;
    diag.sort_by(f64::total_cmp);
    if rescale != 1.0 {
        diag.iter_mut().for_each(|x| *x *= rescale);
    }
    Ok(diag)
}

/// A power of two near `norm` when squares of that size would overflow or
/// underflow, otherwise 1. Dividing by it is exact.
fn power_of_two_rescale(norm: f64) -> f64 {
    if norm > 1e100 || (norm > 0.0 && norm < 1e-100) {
        2f64.powi(norm.log2().round() as i32)
    } else {
        1.0
    }
}

/// Reduces the lower triangle of `a` to tridiagonal form. Returns the
/// diagonal and the subdiagonal (`sub[i]` couples `i` and `i + 1`; the last
/// entry is zero).
///
/// Each step's rank-2 update of the trailing block is deferred and applied
/// row by row during the next step's matrix-vector product, so the triangle
/// is swept once per step.
pub fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut sub = vec![0.0; n];
    if n == 0 {
        return (diag, sub);
    }
    // reflector `v` and correction `w` of the previous step, indexed from
    // global row `k` at step `k`; empty when nothing is pending
    let mut prev_v: Vec<f64> = Vec::with_capacity(n);
    let mut prev_w: Vec<f64> = Vec::with_capacity(n);
    let mut v: Vec<f64> = Vec::with_capacity(n);
    let mut p: Vec<f64> = Vec::with_capacity(n);

    for k in 0..n.saturating_sub(2) {
        let pending = !prev_v.is_empty();
        if pending {
            for i in k..n {
                a[i * n + k] -= prev_v[i - k] * prev_w[0] + prev_w[i - k] * prev_v[0];
            }
        }
        diag[k] = a[k * n + k];
        let m = n - k - 1;
        let off = k + 1;
        v.clear();
        v.extend((0..m).map(|i| a[(off + i) * n + k]));
        let tail: f64 = v[1..].iter().map(|x| x * x).sum();
        if tail == 0.0 {
            sub[k] = v[0];
            if pending {
                apply_rank2(a, n, off, &prev_v[1..], &prev_w[1..]);
                prev_v.clear();
                prev_w.clear();
            }
            continue;
        }
        let norm = (v[0] * v[0] + tail).sqrt();
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let beta = 2.0 / (v[0] * v[0] + tail);
        sub[k] = alpha;

        // p = beta * B v on the updated trailing block B
        p.clear();
        p.resize(m, 0.0);
        let mut i = 0;
        while i < m {
            if pending && i + 1 < m {
                // rows i and i + 1 together, sharing the loads of v, w and p
                let (pv, pw) = (&prev_v[1..], &prev_w[1..]);
                let base0 = (off + i) * n + off;
                let (head, rest) = a.split_at_mut(base0 + n);
                let r0 = &mut head[base0..base0 + i + 1];
                let r1 = &mut rest[..i + 2];
                let c0 = (pv[i], pw[i], v[i]);
                let c1 = (pv[i + 1], pw[i + 1], v[i + 1]);
                let (d0, d1) = fused_update_pair(
                    &mut r0[..i],
                    &mut r1[..i],
                    &pv[..i],
                    &pw[..i],
                    c0,
                    c1,
                    &v[..i],
                    &mut p[..i],
                );
                r0[i] -= c0.0 * pw[i] + c0.1 * pv[i];
                p[i] += d0 + r0[i] * v[i];
                let b = r1[i] - (c1.0 * pw[i] + c1.1 * pv[i]);
                r1[i] = b;
                let d1 = d1 + b * v[i];
                p[i] += v[i + 1] * b;
                r1[i + 1] -= c1.0 * pw[i + 1] + c1.1 * pv[i + 1];
                p[i + 1] += d1 + r1[i + 1] * v[i + 1];
                i += 2;
                continue;
            }
            let row = &mut a[(off + i) * n + off..(off + i) * n + off + i + 1];
            let (strict, diag_entry) = row.split_at_mut(i);
            let vi = v[i];
            if pending {
                let (pv, pw) = (prev_v[i + 1], prev_w[i + 1]);
                diag_entry[0] -= pv * prev_w[i + 1] + pw * prev_v[i + 1];
                let dot = fused_update_row(
                    strict,
                    &prev_v[1..=i],
                    &prev_w[1..=i],
                    pv,
                    pw,
                    &v[..i],
                    vi,
                    &mut p[..i],
                );
                p[i] += dot + diag_entry[0] * vi;
            } else {
                let dot = symv_row(strict, &v[..i], vi, &mut p[..i]);
                p[i] += dot + diag_entry[0] * vi;
            }
            i += 1;
        }
        for pi in p.iter_mut() {
            *pi *= beta;
        }
        // w = p - (beta/2)(pᵀv) v, kept for the next step
        let kappa = 0.5 * beta * dot(&p, &v);
        for (pi, &vi) in p.iter_mut().zip(v.iter()) {
            *pi -= kappa * vi;
        }
        std::mem::swap(&mut prev_v, &mut v);
        std::mem::swap(&mut prev_w, &mut p);
    }
    if n >= 2 {
        if !prev_v.is_empty() {
            apply_rank2(a, n, n - 2, &prev_v, &prev_w);
        }
        diag[n - 2] = a[(n - 2) * n + n - 2];
        sub[n - 2] = a[(n - 1) * n + n - 2];
    }
    diag[n - 1] = a[(n - 1) * n + n - 1];
    (diag, sub)
}

/// `B -= v wᵀ + w vᵀ` on the lower triangle of the block starting at `off`.
fn apply_rank2(a: &mut [f64], n: usize, off: usize, v: &[f64], w: &[f64]) {
    for i in 0..n - off {
        let row = &mut a[(off + i) * n + off..(off + i) * n + off + i + 1];
        let (vi, wi) = (v[i], w[i]);
        for ((bij, &vj), &wj) in row.iter_mut().zip(&v[..=i]).zip(&w[..=i]) {
            *bij -= vi * wj + wi * vj;
        }
    }
}

/// Strict lower part of one row: returns `row · u` and adds `ui * row` to `p`.
fn symv_row(row: &[f64], u: &[f64], ui: f64, p: &mut [f64]) -> f64 {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx") && std::arch::is_x86_feature_detected!("fma") {
        // SAFETY: the CPU supports AVX and FMA, checked above
        return unsafe { symv_row_avx(row, u, ui, p) };
    }
    symv_row_generic(row, u, ui, p)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx,fma")]
unsafe fn symv_row_avx(row: &[f64], u: &[f64], ui: f64, p: &mut [f64]) -> f64 {
    use std::arch::x86_64::*;
    let len = row.len();
    let (u, p) = (&u[..len], &mut p[..len]);
    let full = len / LANES * LANES;
    let mut lo = _mm256_setzero_pd();
    let mut hi = _mm256_setzero_pd();
    let s = _mm256_set1_pd(ui);
    let (rp, up, pp) = (row.as_ptr(), u.as_ptr(), p.as_mut_ptr());
    let mut c = 0;
    while c < full {
        let r0 = _mm256_loadu_pd(rp.add(c));
        let r1 = _mm256_loadu_pd(rp.add(c + 4));
        lo = _mm256_fmadd_pd(r0, _mm256_loadu_pd(up.add(c)), lo);
        hi = _mm256_fmadd_pd(r1, _mm256_loadu_pd(up.add(c + 4)), hi);
        _mm256_storeu_pd(
            pp.add(c),
            _mm256_fmadd_pd(s, r0, _mm256_loadu_pd(pp.add(c))),
        );
        _mm256_storeu_pd(
            pp.add(c + 4),
            _mm256_fmadd_pd(s, r1, _mm256_loadu_pd(pp.add(c + 4))),
        );
        c += LANES;
    }
    let mut tail = 0.0;
    for j in full..len {
        tail = row[j].mul_add(u[j], tail);
        p[j] = ui.mul_add(row[j], p[j]);
    }
    reduce_avx(lo, hi) + tail
}

/// Same order as [`reduce`]: lane `l` of `lo` pairs with lane `l` of `hi`.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx")]
unsafe fn reduce_avx(lo: std::arch::x86_64::__m256d, hi: std::arch::x86_64::__m256d) -> f64 {
    use std::arch::x86_64::*;
    let mut s = [0.0f64; 4];
    _mm256_storeu_pd(s.as_mut_ptr(), _mm256_add_pd(lo, hi));
    (s[0] + s[1]) + (s[2] + s[3])
}

#[inline(always)]
fn symv_row_generic(row: &[f64], u: &[f64], ui: f64, p: &mut [f64]) -> f64 {
    let len = row.len();
    let mut acc = [0.0f64; LANES];
    let mut rc = row.chunks_exact(LANES);
    let mut uc = u[..len].chunks_exact(LANES);
    let mut pc = p[..len].chunks_exact_mut(LANES);
    for ((r, u), p) in (&mut rc).zip(&mut uc).zip(&mut pc) {
        for l in 0..LANES {
            acc[l] = r[l].mul_add(u[l], acc[l]);
            p[l] = ui.mul_add(r[l], p[l]);
        }
    }
    let mut tail = 0.0;
    for ((&b, &uj), pj) in rc
        .remainder()
        .iter()
        .zip(uc.remainder())
        .zip(pc.into_remainder())
    {
        tail = b.mul_add(uj, tail);
        *pj = ui.mul_add(b, *pj);
    }
    reduce(&acc) + tail
}

/// As [`symv_row`], after first applying the deferred update
/// `row_j -= pv * w_j + pw * v_j`.
#[allow(clippy::too_many_arguments)]
fn fused_update_row(
    row: &mut [f64],
    v: &[f64],
    w: &[f64],
    pv: f64,
    pw: f64,
    u: &[f64],
    ui: f64,
    p: &mut [f64],
) -> f64 {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx") && std::arch::is_x86_feature_detected!("fma") {
        // SAFETY: the CPU supports AVX and FMA, checked above
        return unsafe { fused_update_row_avx(row, v, w, pv, pw, u, ui, p) };
    }
    fused_update_row_generic(row, v, w, pv, pw, u, ui, p)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx,fma")]
#[allow(clippy::too_many_arguments)]
unsafe fn fused_update_row_avx(
    row: &mut [f64],
    v: &[f64],
    w: &[f64],
    pv: f64,
    pw: f64,
    u: &[f64],
    ui: f64,
    p: &mut [f64],
) -> f64 {
    use std::arch::x86_64::*;
    let len = row.len();
    let (v, w, u, p) = (&v[..len], &w[..len], &u[..len], &mut p[..len]);
    let full = len / LANES * LANES;
    let mut acc = [_mm256_setzero_pd(); 2];
    let (sv, sw, su) = (_mm256_set1_pd(pv), _mm256_set1_pd(pw), _mm256_set1_pd(ui));
    let (rp, vp, wp, up, pp) = (
        row.as_mut_ptr(),
        v.as_ptr(),
        w.as_ptr(),
        u.as_ptr(),
        p.as_mut_ptr(),
    );
    let mut c = 0;
    while c < full {
        for (h, a) in acc.iter_mut().enumerate() {
            let o = c + 4 * h;
            let b = _mm256_fnmadd_pd(sv, _mm256_loadu_pd(wp.add(o)), _mm256_loadu_pd(rp.add(o)));
            let b = _mm256_fnmadd_pd(sw, _mm256_loadu_pd(vp.add(o)), b);
            _mm256_storeu_pd(rp.add(o), b);
            *a = _mm256_fmadd_pd(b, _mm256_loadu_pd(up.add(o)), *a);
            _mm256_storeu_pd(
                pp.add(o),
                _mm256_fmadd_pd(su, b, _mm256_loadu_pd(pp.add(o))),
            );
        }
        c += LANES;
    }
    let mut tail = 0.0;
    for j in full..len {
        let b = update(row[j], pv, w[j], pw, v[j]);
        row[j] = b;
        tail = b.mul_add(u[j], tail);
        p[j] = ui.mul_add(b, p[j]);
    }
    reduce_avx(acc[0], acc[1]) + tail
}

#[inline(always)]
#[allow(clippy::too_many_arguments)]
fn fused_update_row_generic(
    row: &mut [f64],
    v: &[f64],
    w: &[f64],
    pv: f64,
    pw: f64,
    u: &[f64],
    ui: f64,
    p: &mut [f64],
) -> f64 {
    let len = row.len();
    let mut acc = [0.0f64; LANES];
    let mut rc = row.chunks_exact_mut(LANES);
    let mut vc = v[..len].chunks_exact(LANES);
    let mut wc = w[..len].chunks_exact(LANES);
    let mut uc = u[..len].chunks_exact(LANES);
    let mut pc = p[..len].chunks_exact_mut(LANES);
    for ((((r, v), w), u), p) in (&mut rc)
        .zip(&mut vc)
        .zip(&mut wc)
        .zip(&mut uc)
        .zip(&mut pc)
    {
        for l in 0..LANES {
            let b = update(r[l], pv, w[l], pw, v[l]);
            r[l] = b;
            acc[l] = b.mul_add(u[l], acc[l]);
            p[l] = ui.mul_add(b, p[l]);
        }
    }
    let mut tail = 0.0;
    let rest = rc
        .into_remainder()
        .iter_mut()
        .zip(vc.remainder())
        .zip(wc.remainder());
    for (((r, &vj), &wj), (&uj, pj)) in rest.zip(uc.remainder().iter().zip(pc.into_remainder())) {
        let b = update(*r, pv, wj, pw, vj);
        *r = b;
        tail = b.mul_add(uj, tail);
        *pj = ui.mul_add(b, *pj);
    }
    reduce(&acc) + tail
}

/// Two consecutive rows through the deferred update and the product, in one
/// sweep. `c0` and `c1` hold `(pv, pw, ui)` for each row as in
/// [`fused_update_row`]; `p_j` receives row 0's term before row 1's.
#[allow(clippy::too_many_arguments)]
fn fused_update_pair(
    r0: &mut [f64],
    r1: &mut [f64],
    v: &[f64],
    w: &[f64],
    c0: (f64, f64, f64),
    c1: (f64, f64, f64),
    u: &[f64],
    p: &mut [f64],
) -> (f64, f64) {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx") && std::arch::is_x86_feature_detected!("fma") {
        // SAFETY: the CPU supports AVX and FMA, checked above
        return unsafe { fused_update_pair_avx(r0, r1, v, w, c0, c1, u, p) };
    }
    fused_update_pair_generic(r0, r1, v, w, c0, c1, u, p)
}

#[allow(clippy::too_many_arguments)]
fn fused_update_pair_generic(
    r0: &mut [f64],
    r1: &mut [f64],
    v: &[f64],
    w: &[f64],
    c0: (f64, f64, f64),
    c1: (f64, f64, f64),
    u: &[f64],
    p: &mut [f64],
) -> (f64, f64) {
    let len = r0.len();
    let full = len / LANES * LANES;
    let (mut acc0, mut acc1) = ([0.0f64; LANES], [0.0f64; LANES]);
    let (mut tail0, mut tail1) = (0.0, 0.0);
    for j in 0..len {
        let b0 = update(r0[j], c0.0, w[j], c0.1, v[j]);
        let b1 = update(r1[j], c1.0, w[j], c1.1, v[j]);
        r0[j] = b0;
        r1[j] = b1;
        if j < full {
            acc0[j % LANES] = b0.mul_add(u[j], acc0[j % LANES]);
            acc1[j % LANES] = b1.mul_add(u[j], acc1[j % LANES]);
        } else {
            tail0 = b0.mul_add(u[j], tail0);
            tail1 = b1.mul_add(u[j], tail1);
        }
        p[j] = c1.2.mul_add(b1, c0.2.mul_add(b0, p[j]));
    }
    (reduce(&acc0) + tail0, reduce(&acc1) + tail1)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx,fma")]
#[allow(clippy::too_many_arguments)]
unsafe fn fused_update_pair_avx(
    r0: &mut [f64],
    r1: &mut [f64],
    v: &[f64],
    w: &[f64],
    c0: (f64, f64, f64),
    c1: (f64, f64, f64),
    u: &[f64],
    p: &mut [f64],
) -> (f64, f64) {
    use std::arch::x86_64::*;
    let len = r0.len();
    let (r1, v, w, u, p) = (
        &mut r1[..len],
        &v[..len],
        &w[..len],
        &u[..len],
        &mut p[..len],
    );
    let full = len / LANES * LANES;
    let mut acc0 = [_mm256_setzero_pd(); 2];
    let mut acc1 = [_mm256_setzero_pd(); 2];
    let (pv0, pw0, u0) = (
        _mm256_set1_pd(c0.0),
        _mm256_set1_pd(c0.1),
        _mm256_set1_pd(c0.2),
    );
    let (pv1, pw1, u1) = (
        _mm256_set1_pd(c1.0),
        _mm256_set1_pd(c1.1),
        _mm256_set1_pd(c1.2),
    );
    let (q0, q1) = (r0.as_mut_ptr(), r1.as_mut_ptr());
    let (vp, wp, up, pp) = (v.as_ptr(), w.as_ptr(), u.as_ptr(), p.as_mut_ptr());
    let mut c = 0;
    while c < full {
        for h in 0..2 {
            let o = c + 4 * h;
            let (wv, vv, uv) = (
                _mm256_loadu_pd(wp.add(o)),
                _mm256_loadu_pd(vp.add(o)),
                _mm256_loadu_pd(up.add(o)),
            );
            let b0 = _mm256_fnmadd_pd(
                pw0,
                vv,
                _mm256_fnmadd_pd(pv0, wv, _mm256_loadu_pd(q0.add(o))),
            );
            let b1 = _mm256_fnmadd_pd(
                pw1,
                vv,
                _mm256_fnmadd_pd(pv1, wv, _mm256_loadu_pd(q1.add(o))),
            );
            _mm256_storeu_pd(q0.add(o), b0);
            _mm256_storeu_pd(q1.add(o), b1);
            acc0[h] = _mm256_fmadd_pd(b0, uv, acc0[h]);
            acc1[h] = _mm256_fmadd_pd(b1, uv, acc1[h]);
            let pj = _mm256_fmadd_pd(u0, b0, _mm256_loadu_pd(pp.add(o)));
            _mm256_storeu_pd(pp.add(o), _mm256_fmadd_pd(u1, b1, pj));
        }
        c += LANES;
    }
    let (mut tail0, mut tail1) = (0.0, 0.0);
    for j in full..len {
        let b0 = update(r0[j], c0.0, w[j], c0.1, v[j]);
        let b1 = update(r1[j], c1.0, w[j], c1.1, v[j]);
        r0[j] = b0;
        r1[j] = b1;
        tail0 = b0.mul_add(u[j], tail0);
        tail1 = b1.mul_add(u[j], tail1);
        p[j] = c1.2.mul_add(b1, c0.2.mul_add(b0, p[j]));
    }
    (
        reduce_avx(acc0[0], acc0[1]) + tail0,
        reduce_avx(acc1[0], acc1[1]) + tail1,
    )
}

const LANES: usize = 8;

/// `r - a x - b y` as two fused steps; the SIMD kernels use the same order.
#[inline(always)]
fn update(r: f64, a: f64, x: f64, b: f64, y: f64) -> f64 {
    (-b).mul_add(y, (-a).mul_add(x, r))
}

#[inline(always)]
fn reduce(acc: &[f64; LANES]) -> f64 {
    ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]))
}

/// Dot product with a fixed summation order, so results do not depend on
/// the SIMD width the compiler picks.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().min(b.len());
    let mut acc = [0.0f64; LANES];
    let mut ac = a[..len].chunks_exact(LANES);
    let mut bc = b[..len].chunks_exact(LANES);
    for (x, y) in (&mut ac).zip(&mut bc) {
        for l in 0..LANES {
            acc[l] += x[l] * y[l];
        }
    }
    let tail: f64 = ac
        .remainder()
        .iter()
        .zip(bc.remainder())
        .map(|(x, y)| x * y)
        .sum();
    reduce(&acc) + tail
}

/// `sqrt(a^2 + b^2)`, falling back to a scaled evaluation only where the
/// squares could overflow or underflow.
#[inline]
fn pythag(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m < 1e150 && m > 1e-150 {
        (a * a + b * b).sqrt()
    } else {
        libm::hypot(a, b)
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, in the root-free
/// form that carries squared off-diagonals. On return `diag` holds the
/// (unsorted) eigenvalues and `sub` is destroyed.
pub fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64]) -> Result<()> {
    let n = diag.len();
    assert_eq!(sub.len(), n);
    if n == 0 {
        return Ok(());
    }
    sub[n - 1] = 0.0;
    // squares must neither overflow nor underflow; rescale by a power of two
    let norm = diag
        .iter()
        .chain(sub.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let rescale = power_of_two_rescale(norm);
    for (d, e) in diag.iter_mut().zip(sub.iter_mut()) {
        *d /= rescale;
        *e = (*e / rescale) * (*e / rescale);
    }
    let eps2 = f64::EPSILON * f64::EPSILON;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = diag[m].abs() + diag[m + 1].abs();
                if sub[m] <= eps2 * scale * scale {
                    sub[m] = 0.0;
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            let root = sub[l].sqrt();
            let g = (diag[l + 1] - diag[l]) / (2.0 * root);
            let sigma = diag[l] - root / (g + pythag(g, 1.0).copysign(g));
            let (mut c, mut s) = (1.0f64, 0.0f64);
            let mut gamma = diag[m] - sigma;
            let mut p = gamma * gamma;
            for i in (l..m).rev() {
                let bb = sub[i];
                let r = p + bb;
                if i + 1 != m {
                    sub[i + 1] = s * r;
                }
                let old_c = c;
                c = p / r;
                s = bb / r;
                let old_gamma = gamma;
                let alpha = diag[i];
                gamma = c * (alpha - sigma) - s * old_gamma;
                diag[i + 1] = old_gamma + (alpha - gamma);
                p = if c != 0.0 {
                    gamma * gamma / c
                } else {
                    old_c * bb
                };
            }
            sub[l] = s * p;
            diag[l] = sigma + gamma;
        }
    }
    if rescale != 1.0 {
        for d in diag.iter_mut() {
            *d *= rescale;
        }
    }
    Ok(())
}
