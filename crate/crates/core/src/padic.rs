//! Transition matrix between the standard and Casselman bases of
//! Iwahori-invariants, computed through the K-theoretic dictionary:
//! Gindikin–Karpelevich specialization, Bump–Nakasuji–Naruse factorization
//! against smoothness, and the analyticity test.

use crate::error::Error;
use crate::exactalg::{LaurentPoly, RatFunc};
use crate::stablecalc;
use crate::weyl::{RootSystem, WIdx};

/// Transition coefficients m_{u,w} defined by Σ_{w≥u}φ_w = Σ_w m_{u,w}f_w.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub m: Vec<Vec<RatFunc>>,
}

/// Casselman-basis normalization factor at w, simplified:
/// f_w|_w = q^{ℓ(w)} ∏_{β>0,wβ>0}(1−qe^{−wβ}) ∏_{β>0,wβ<0}(1−e^{−wβ}).
fn casselman_factor(rs: &RootSystem, w: WIdx) -> LaurentPoly {
    let one = LaurentPoly::one(rs.rank);
    let q = LaurentPoly::q_half(rs.rank, 2);
    let mut p = LaurentPoly::q_half(rs.rank, 2 * rs.len(w) as i64);
    for b in &rs.positive_roots {
        let wb = rs.act_alpha(w, b);
        let neg: Vec<_> = wb.iter().map(|c| -c.clone()).collect();
        let e = crate::heckealg::e_root(rs, &neg);
        if wb.iter().any(|c| num::Signed::is_negative(c)) {
            p = p.mul(&one.sub(&e));
        } else {
            p = p.mul(&one.sub(&q.mul(&e)));
        }
    }
    p
}

/// Full m-matrix.  The (−ρ)-twist carried by both dictionary endpoints
/// cancels; the character inversion e^λ ↦ e^{−λ} converts from the
/// K-theoretic character convention to the unramified-character one.
pub fn transition_matrix(rs: &RootSystem) -> TransitionMatrix {
    let minus = stablecalc::stab_minus(rs);
    let mut m = vec![vec![RatFunc::zero(rs.rank); rs.order()]; rs.order()];
    for u in 0..rs.order() {
        // Σ_{v≥u} q^{ℓ(v)/2} stab⁻_v
        let mut num = crate::heckealg::LocClass::zero(rs);
        for v in 0..rs.order() {
            if rs.bruhat_leq(u, v) {
                let c = RatFunc::from_poly(LaurentPoly::q_half(rs.rank, rs.len(v) as i64));
                num = num.add(&minus[v].scale(&c));
            }
        }
        for w in 0..rs.order() {
            let f = num.vals[w].div(&RatFunc::from_poly(casselman_factor(rs, w)));
            m[u][w] = f.invert_characters();
        }
    }
    TransitionMatrix { m }
}

/// ∏_{α ∈ roots}(1−q^{−1}e^α)/(1−e^α) over the given positive-root indices.
fn gk_product(rs: &RootSystem, roots: &[usize]) -> RatFunc {
    let one = LaurentPoly::one(rs.rank);
    let qinv = LaurentPoly::q_half(rs.rank, -2);
    let mut f = RatFunc::one(rs.rank);
    for &i in roots {
        let e = crate::heckealg::e_root(rs, &rs.positive_roots[i]);
        f = f.mul(&RatFunc::new(one.sub(&qinv.mul(&e)), one.sub(&e)));
    }
    f
}

/// Gindikin–Karpelevich: m_{e,w} = ∏_{α>0,w^{-1}α<0}(1−q^{−1}e^α)/(1−e^α).
pub fn gk_check(rs: &RootSystem, tm: &TransitionMatrix) -> bool {
    (0..rs.order()).all(|w| {
        let wi = rs.inv(w);
        let roots: Vec<usize> = (0..rs.num_pos_roots())
            .filter(|&i| {
                rs.act_alpha(wi, &rs.positive_roots[i])
                    .iter()
                    .any(|c| num::Signed::is_negative(c))
            })
            .collect();
        tm.m[rs.id()][w] == gk_product(rs, &roots)
    })
}

/// Per-pair verdicts of the Bump–Nakasuji–Naruse theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnnVerdict {
    pub factorization: bool,
    pub rationally_smooth: bool,
    pub analytic: bool,
}

/// BNN root set {α > 0 : u ≤ s_α w < w}.
fn bnn_roots(rs: &RootSystem, u: WIdx, w: WIdx) -> Vec<usize> {
    (0..rs.num_pos_roots())
        .filter(|&i| {
            let sw = rs.mul(rs.reflections[i], w);
            rs.len(sw) < rs.len(w) && rs.bruhat_leq(sw, w) && rs.bruhat_leq(u, sw)
        })
        .collect()
}

pub fn bnn_tests(rs: &RootSystem, tm: &TransitionMatrix, u: WIdx, w: WIdx) -> Result<BnnVerdict, Error> {
    if !rs.bruhat_leq(u, w) {
        return Err(Error::NotComparable);
    }
    let roots = bnn_roots(rs, u, w);
    let factorization = tm.m[u][w] == gk_product(rs, &roots);
    let rationally_smooth = rs.rationally_smooth_at(u, w)?;
    let one = LaurentPoly::one(rs.rank);
    let mut denom_clear = RatFunc::one(rs.rank);
    for &i in &roots {
        let e = crate::heckealg::e_root(rs, &rs.positive_roots[i]);
        denom_clear = denom_clear.mul(&RatFunc::from_poly(one.sub(&e)));
    }
    let analytic = denom_clear.mul(&tm.m[u][w]).is_polynomial();
    Ok(BnnVerdict { factorization, rationally_smooth, analytic })
}
