//! Exact sign of 2×2 determinants with symbolic perturbation.
//!
//! Vertex values `(uᵢ, vᵢ)` are perturbed as `uᵢ + ε^{2^{2r}}`,
//! `vᵢ + ε^{2^{2r+1}}` where `r` is the vertex's global rank. The perturbed
//! configuration is generic, and every sign below is the sign it would have
//! for all sufficiently small `ε > 0`. Because each sign depends only on the
//! two vertices involved, faces shared by neighbouring tetrahedra always
//! agree.

use core::cmp::Ordering;
#[allow(unused_imports)]
use num_traits::Float;


fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Exact sign of `a·d − b·c` for finite inputs.
pub(crate) fn det2_sign(a: f64, b: f64, c: f64, d: f64) -> Ordering {
    let ad = a * d;
    let bc = b * c;
    let approx = ad - bc;
    // Forward error of the naive evaluation is below 3ε(|ad| + |bc|).
    let bound = 4.0 * f64::EPSILON * (ad.abs() + bc.abs());
    if approx.abs() > bound {
        return approx.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
    }
    let (p1, e1) = two_prod(a, d);
    let (p2, e2) = two_prod(b, c);
    expansion_sign([e1, -e2, p1, -p2])
}

/// Exact sign of a sum of four doubles via a nonoverlapping expansion.
fn expansion_sign(terms: [f64; 4]) -> Ordering {
    let mut exp = [0.0; 4];
    let mut len = 0;
    for b in terms {
        let mut q = b;
        let mut next = [0.0; 4];
        let mut next_len = 0;
        for &e in &exp[..len] {
            let (s, err) = two_sum(q, e);
            if err != 0.0 {
                next[next_len] = err;
                next_len += 1;
            }
            q = s;
        }
        if q != 0.0 {
            next[next_len] = q;
            next_len += 1;
        }
        exp = next;
        len = next_len;
    }
    if len == 0 {
        Ordering::Equal
    } else {
        exp[len - 1].partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
}

/// Perturbed sign of `det[[uᵢ, vᵢ], [uⱼ, vⱼ]] = uᵢvⱼ − uⱼvᵢ` where vertex
/// `i` has lower global rank than `j`. Never returns `Equal`.
pub(crate) fn sos_det_sign(ui: f64, vi: f64, uj: f64, vj: f64) -> Ordering {
    // Expansion in decreasing perturbation order:
    // det₀, +vⱼ, −uⱼ, −vᵢ, then the constant −1.
    let exact = det2_sign(ui, uj, vi, vj);
    if exact != Ordering::Equal {
        return exact;
    }
    for term in [vj, -uj, -vi] {
        if term != 0.0 {
            return if term > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Less
}
