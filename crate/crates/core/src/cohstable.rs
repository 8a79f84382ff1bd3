//! Cohomological stable bases on the cotangent bundle of the flag variety:
//! the subword restriction formula for stab₋, the localization pairing and
//! the dual family stab₊, AJS/Billey Schubert localizations with the ħ→∞
//! limit bridge, and CSM classes of Schubert cells with their
//! Schubert-basis expansion and positivity data.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::error::Error;
use crate::exactalg::{LaurentPoly, RatFunc};
use crate::heckealg::{self, LocClass};
use crate::weyl::{Rat, RootSystem, WIdx};

/// Euler class of the cotangent-bundle tangent space at the fixed point w:
/// e(T_w(T*𝔅)) = ∏_{α>0}(−wα)(wα−ħ).
pub fn euler_cot(rs: &RootSystem, w: WIdx) -> LaurentPoly {
    let h = LaurentPoly::hbar(rs.rank);
    let mut p = LaurentPoly::one(rs.rank);
    for a in &rs.positive_roots {
        let wa = LaurentPoly::root_form(rs, &rs.act_alpha(w, a));
        p = p.mul(&wa.neg()).mul(&wa.sub(&h));
    }
    p
}

/// The inversion roots β_i = σ_1···σ_{i−1} α_i of a reduced word.
fn word_betas(rs: &RootSystem, word: &[usize]) -> Vec<Vec<Rat>> {
    let mut betas = Vec::with_capacity(word.len());
    let mut prefix = rs.id();
    for &i in word {
        betas.push(rs.act_alpha(prefix, &rs.simple_root(i)));
        prefix = rs.mul(prefix, rs.simple(i));
    }
    betas
}

/// Restriction stab₋(w)|_y computed from a chosen reduced word of y:
/// (−1)^{ℓ(y)} ∏_{α∈R⁺∖R(y)}(α−ħ) Σ_{subwords with product w} ħ^{l−k} ∏ β.
pub fn stab_minus_coh_entry(rs: &RootSystem, w: WIdx, word: &[usize]) -> RatFunc {
    let rank = rs.rank;
    let h = LaurentPoly::hbar(rank);
    let l = word.len();
    let betas = word_betas(rs, word);
    let in_ry: Vec<bool> = rs
        .positive_roots
        .iter()
        .map(|a| betas.iter().any(|b| b == a))
        .collect();
    let mut pre = LaurentPoly::one(rank);
    for (a, &inr) in rs.positive_roots.iter().zip(&in_ry) {
        if !inr {
            pre = pre.mul(&LaurentPoly::root_form(rs, a).sub(&h));
        }
    }
    if l % 2 == 1 {
        pre = pre.neg();
    }
    let mut sum = LaurentPoly::zero(rank);
    for mask in 0u32..(1u32 << l) {
        let mut prod = rs.id();
        let mut term = LaurentPoly::one(rank);
        let mut k = 0;
        for (j, &i) in word.iter().enumerate() {
            if mask & (1 << j) != 0 {
                prod = rs.mul(prod, rs.simple(i));
                term = term.mul(&LaurentPoly::root_form(rs, &betas[j]));
                k += 1;
            }
        }
        if prod == w {
            sum = sum.add(&term.mul(&h.pow(l - k)));
        }
    }
    RatFunc::from_poly(pre.mul(&sum))
}

/// stab₋(w): restriction vector via the subword formula on each fixed
/// point's canonical reduced word.
pub fn stab_minus_coh(rs: &RootSystem, w: WIdx) -> LocClass {
    LocClass {
        vals: (0..rs.order())
            .map(|y| stab_minus_coh_entry(rs, w, rs.word(y)))
            .collect(),
    }
}

/// Localization pairing Σ_w F|_w G|_w / e(T_w(T*𝔅)).
pub fn pairing_coh(rs: &RootSystem, f: &LocClass, g: &LocClass) -> RatFunc {
    let mut s = RatFunc::zero(rs.rank);
    for w in 0..rs.order() {
        let term = f.vals[w]
            .mul(&g.vals[w])
            .div(&RatFunc::from_poly(euler_cot(rs, w)));
        s = s.add(&term);
    }
    s
}

/// The full stab₊ family via the graded-Hecke recursion
/// stab₊(ws_i) = −π(s_i) stab₊(w), seeded at stab₊(e) = ∏_{α>0}α · 1_e.
pub fn stab_plus_coh_family(rs: &RootSystem) -> Vec<LocClass> {
    let rank = rs.rank;
    let mut seed = LaurentPoly::one(rank);
    for a in &rs.positive_roots {
        seed = seed.mul(&LaurentPoly::root_form(rs, a));
    }
    let mut fam: Vec<Option<LocClass>> = vec![None; rs.order()];
    let mut cls = LocClass::zero(rs);
    cls.vals[rs.id()] = RatFunc::from_poly(seed);
    fam[rs.id()] = Some(cls);
    let mut order: Vec<WIdx> = (0..rs.order()).collect();
    order.sort_by_key(|&w| rs.len(w));
    for w in order {
        if fam[w].is_some() {
            continue;
        }
        let i = *rs.word(w).last().expect("non-identity element has a word");
        let prev = rs.mul(w, rs.simple(i));
        let f = fam[prev].as_ref().expect("shorter element already built");
        fam[w] = Some(heckealg::coh_hecke_s(rs, i, f).neg());
    }
    fam.into_iter().map(|f| f.expect("family complete")).collect()
}

pub fn stab_plus_coh(rs: &RootSystem, w: WIdx) -> LocClass {
    stab_plus_coh_family(rs).swap_remove(w)
}

/// AJS/Billey localization of the opposite Schubert class:
/// [Y(w)]|_y = Σ over reduced subwords of word(y) with product w of ∏ β.
pub fn ajs_billey(rs: &RootSystem, w: WIdx) -> LocClass {
    let rank = rs.rank;
    let mut out = LocClass::zero(rs);
    for y in 0..rs.order() {
        let word = rs.word(y);
        let l = word.len();
        let betas = word_betas(rs, word);
        let mut sum = LaurentPoly::zero(rank);
        for mask in 0u32..(1u32 << l) {
            if (mask.count_ones() as usize) != rs.len(w) {
                continue;
            }
            let mut prod = rs.id();
            let mut term = LaurentPoly::one(rank);
            for (j, &i) in word.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    prod = rs.mul(prod, rs.simple(i));
                    term = term.mul(&LaurentPoly::root_form(rs, &betas[j]));
                }
            }
            if prod == w {
                sum = sum.add(&term);
            }
        }
        out.vals[y] = RatFunc::from_poly(sum);
    }
    out
}

/// Verify [Y(w)]|_y = (−1)^{ℓ(w)} lim_{ħ→∞} stab₋(w)|_y / (−ħ)^{dim Y(w)}
/// by exact leading ħ-coefficient comparison (dim Y(w) = ℓ(w₀) − ℓ(w)).
pub fn billey_limit_check(rs: &RootSystem, w: WIdx) -> Result<bool, Error> {
    let d = (rs.num_pos_roots() - rs.len(w)) as i64;
    let minus = stab_minus_coh(rs, w);
    let billey = ajs_billey(rs, w);
    for y in 0..rs.order() {
        let p = minus.vals[y].as_poly()?;
        if let Some(deg) = p.h_degree() {
            if deg > d {
                return Ok(false);
            }
        }
        let mut lead = p.h_coefficient(d);
        // (−1)^{ℓ(w)} · coefficient · (−1)^d from (−ħ)^d
        if (rs.len(w) as i64 + d) % 2 == 1 {
            lead = lead.neg();
        }
        let want = billey.vals[y].as_poly()?;
        if lead != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Schubert class [X(u)] as the w₀-image of [Y(w₀u)] under the left Weyl
/// action.
pub fn schubert_class_x(rs: &RootSystem, u: WIdx) -> LocClass {
    let w0 = rs.w0();
    ajs_billey(rs, rs.mul(w0, u)).weyl_left_coh(rs, w0)
}

/// Which cell family a CSM class is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    X,
    Y,
}

/// CSM class of a Schubert cell: (−1)^{dim G/B} · (stab₊ or stab₋
/// restrictions) with ħ ↦ 1.
pub fn csm_class(rs: &RootSystem, cell: Cell, w: WIdx) -> Result<LocClass, Error> {
    let stab = match cell {
        Cell::X => stab_plus_coh(rs, w),
        Cell::Y => stab_minus_coh(rs, w),
    };
    let mut out = LocClass::zero(rs);
    for y in 0..rs.order() {
        out.vals[y] = stab.vals[y].subst_h_one()?;
    }
    if rs.num_pos_roots() % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}

/// The full Schubert basis {[X(u)]}.
pub fn schubert_basis_x(rs: &RootSystem) -> Vec<LocClass> {
    (0..rs.order()).map(|u| schubert_class_x(rs, u)).collect()
}

/// Expand a class in a precomputed Schubert basis by a triangular solve.
pub fn expand_in_schubert_basis(
    rs: &RootSystem,
    basis: &[LocClass],
    f: &LocClass,
) -> Result<BTreeMap<WIdx, LaurentPoly>, Error> {
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    let mut order: Vec<WIdx> = (0..rs.order()).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(rs.len(u)));
    for u in order {
        let val = rem.vals[u].clone();
        if val.is_zero() {
            continue;
        }
        let c = val.div(&basis[u].vals[u]).as_poly()?;
        rem = rem.sub(&basis[u].scale(&RatFunc::from_poly(c.clone())));
        out.insert(u, c);
    }
    if !rem.is_zero() {
        return Err(Error::Internal("Schubert expansion left a remainder".into()));
    }
    Ok(out)
}

/// Expansion coefficients c(w,u) of c_SM(X(w)°) = Σ_u c(w,u)[X(u)]; each
/// coefficient must be a polynomial in the simple roots.
pub fn csm_expand(rs: &RootSystem, w: WIdx) -> Result<BTreeMap<WIdx, LaurentPoly>, Error> {
    expand_in_schubert_basis(rs, &schubert_basis_x(rs), &csm_class(rs, Cell::X, w)?)
}

/// Positivity data for one expansion coefficient: the non-equivariant
/// constant (asserted non-negative-integer by the positivity suite) and the
/// monomialwise-positive verdict on the full equivariant polynomial
/// (reported, not asserted).
#[derive(Debug, Clone)]
pub struct CsmCoefficientReport {
    pub constant: Rat,
    pub constant_nonneg_integer: bool,
    pub equivariant_monomial_positive: bool,
}

pub fn csm_coefficient_report(c: &LaurentPoly) -> CsmCoefficientReport {
    let constant = c
        .subst_alpha_zero()
        .terms
        .values()
        .next()
        .cloned()
        .unwrap_or_else(Rat::zero);
    CsmCoefficientReport {
        constant_nonneg_integer: !constant.is_negative() && constant.is_integer(),
        equivariant_monomial_positive: c.terms.values().all(|v| v.is_positive()),
        constant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::rat;

    fn poly_form(rs: &RootSystem, coords: &[i64]) -> LaurentPoly {
        LaurentPoly::root_form(rs, &coords.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    /// All reduced words of y, built from the right.
    fn reduced_words(rs: &RootSystem, y: WIdx) -> Vec<Vec<usize>> {
        if y == rs.id() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..rs.rank {
            let si = rs.simple(i);
            let prev = rs.mul(y, si);
            if rs.len(prev) < rs.len(y) {
                for mut w in reduced_words(rs, prev) {
                    w.push(i);
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn a1_restriction_values() {
        let rs = RootSystem::build('A', 1).unwrap();
        let s = rs.simple(0);
        let h = LaurentPoly::hbar(1);
        let a = poly_form(&rs, &[1]);
        let m_e = stab_minus_coh(&rs, rs.id());
        let m_s = stab_minus_coh(&rs, s);
        assert_eq!(m_e.vals[rs.id()], RatFunc::from_poly(a.sub(&h)));
        assert_eq!(m_e.vals[s], RatFunc::from_poly(h.neg()));
        assert_eq!(m_s.vals[s], RatFunc::from_poly(a.neg()));
        assert!(m_s.vals[rs.id()].is_zero());
        let plus = stab_plus_coh_family(&rs);
        assert_eq!(plus[rs.id()].vals[rs.id()], RatFunc::from_poly(a.clone()));
        assert!(plus[rs.id()].vals[s].is_zero());
        assert_eq!(plus[s].vals[s], RatFunc::from_poly(a.neg().sub(&h)));
        assert_eq!(plus[s].vals[rs.id()], RatFunc::from_poly(h.neg()));
        // ⟨stab₋(e), stab₊(e)⟩ = −1
        assert_eq!(pairing_coh(&rs, &m_e, &plus[rs.id()]), RatFunc::int(1, -1));
    }

    #[test]
    fn word_independence_a2_b2() {
        for (l, n) in [('A', 2), ('B', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            for y in 0..rs.order() {
                let words = reduced_words(&rs, y);
                for w in 0..rs.order() {
                    let base = stab_minus_coh_entry(&rs, w, rs.word(y));
                    for word in &words {
                        assert_eq!(
                            stab_minus_coh_entry(&rs, w, word),
                            base,
                            "{}{} w={} y={} word={:?}",
                            l,
                            n,
                            w,
                            y,
                            word
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duality_support_and_degree() {
        for (l, n) in [('A', 1), ('A', 2), ('B', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            let plus = stab_plus_coh_family(&rs);
            let minus: Vec<LocClass> =
                (0..rs.order()).map(|w| stab_minus_coh(&rs, w)).collect();
            let sign = if rs.num_pos_roots() % 2 == 1 { -1 } else { 1 };
            for v in 0..rs.order() {
                for w in 0..rs.order() {
                    let p = pairing_coh(&rs, &plus[v], &minus[w]);
                    let want = if v == w { RatFunc::int(n, sign) } else { RatFunc::zero(n) };
                    assert_eq!(p, want, "{}{} v={} w={}", l, n, v, w);
                    // support and ħ-divisibility
                    if !rs.bruhat_leq(w, v) {
                        assert!(minus[w].vals[v].is_zero());
                        assert!(plus[w].vals[v].is_zero() || rs.bruhat_leq(v, w));
                    }
                    if rs.bruhat_leq(w, v) && w != v {
                        let p = minus[w].vals[v].as_poly().unwrap();
                        assert!(p.h_coefficient(0).is_zero(), "divisible by ħ");
                    }
                }
            }
        }
    }

    #[test]
    fn hecke_action_on_both_families_a2() {
        let rs = RootSystem::build('A', 2).unwrap();
        let plus = stab_plus_coh_family(&rs);
        let minus: Vec<LocClass> = (0..rs.order()).map(|w| stab_minus_coh(&rs, w)).collect();
        for fam in [&plus, &minus] {
            for w in 0..rs.order() {
                for i in 0..rs.rank {
                    let ws = rs.mul(w, rs.simple(i));
                    let lhs = heckealg::coh_hecke_s(&rs, i, &fam[w]);
                    assert_eq!(lhs, fam[ws].neg(), "w={} i={}", w, i);
                }
            }
        }
    }

    #[test]
    fn ajs_billey_values_and_limit() {
        let rs1 = RootSystem::build('A', 1).unwrap();
        let s = rs1.simple(0);
        assert_eq!(ajs_billey(&rs1, s).vals[s], RatFunc::from_poly(poly_form(&rs1, &[1])));
        assert!(billey_limit_check(&rs1, s).unwrap());

        let rs = RootSystem::build('A', 2).unwrap();
        let s1 = rs.simple(0);
        let w0 = rs.w0();
        // subwords of (1,2,1) with product s1: β₁ = α1 and β₃ = α2
        assert_eq!(
            ajs_billey(&rs, s1).vals[w0],
            RatFunc::from_poly(poly_form(&rs, &[1, 1]))
        );
        for (l, n) in [('A', 2), ('B', 2)] {
            let rsx = RootSystem::build(l, n).unwrap();
            for w in 0..rsx.order() {
                assert!(billey_limit_check(&rsx, w).unwrap(), "{}{} w={}", l, n, w);
            }
        }
    }

    #[test]
    fn schubert_class_point() {
        // [X(e)] is the class of the point: restriction −α at e in A1
        let rs = RootSystem::build('A', 1).unwrap();
        let x_e = schubert_class_x(&rs, rs.id());
        assert_eq!(x_e.vals[rs.id()], RatFunc::from_poly(poly_form(&rs, &[1]).neg()));
        assert!(x_e.vals[rs.simple(0)].is_zero());
    }

    #[test]
    fn csm_expansion_and_positivity() {
        for (l, n) in [('A', 2), ('B', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            for w in 0..rs.order() {
                let cs = csm_expand(&rs, w).unwrap();
                // leading normalization: non-equivariant limit of c(w,w) is 1
                let diag = csm_coefficient_report(&cs[&w]);
                assert_eq!(diag.constant, rat(1), "c(w,w) {}{} w={}", l, n, w);
                for (u, c) in &cs {
                    assert!(rs.bruhat_leq(*u, w), "support");
                    let rep = csm_coefficient_report(c);
                    assert!(
                        rep.constant_nonneg_integer,
                        "{}{} w={} u={} constant={}",
                        l, n, w, u, rep.constant
                    );
                }
            }
        }
    }

    #[test]
    fn csm_additivity_total_chern() {
        for (l, n) in [('A', 1), ('A', 2), ('B', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            let mut total = LocClass::zero(&rs);
            for w in 0..rs.order() {
                total = total.add(&csm_class(&rs, Cell::X, w).unwrap());
            }
            for y in 0..rs.order() {
                let mut want = LaurentPoly::one(n);
                for a in &rs.positive_roots {
                    let ya = LaurentPoly::root_form(&rs, &rs.act_alpha(y, a));
                    want = want.mul(&LaurentPoly::one(n).sub(&ya));
                }
                assert_eq!(total.vals[y], RatFunc::from_poly(want), "{}{} y={}", l, n, y);
            }
        }
    }
}
