//! Motivic Chern classes of Schubert cells on the flag variety: the
//! zero-section pullback, Serre duality in the fixed-point pushforward
//! basis, both routes of the stable-basis/MC dictionary, λ_y-additivity,
//! and Demazure-generated structure-sheaf classes with MC expansions.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactalg::{LaurentPoly, RatFunc};
use crate::heckealg::LocClass;
use crate::stablecalc;
use crate::weyl::{RootSystem, WIdx};

/// Exterior-algebra factor of the flag-variety tangent space at w:
/// Λ•T_w𝔅 = ∏_{α>0}(1−e^{wα}).
pub fn tangent_factor(rs: &RootSystem, w: WIdx) -> LaurentPoly {
    let one = LaurentPoly::one(rs.rank);
    let mut p = one.clone();
    for a in &rs.positive_roots {
        p = p.mul(&one.sub(&crate::heckealg::e_root(rs, &rs.act_alpha(w, a))));
    }
    p
}

/// Pullback along the zero section 𝔅 ↪ T*𝔅: the restriction vector is
/// reinterpreted over 𝔅 (fixed loci coincide; q survives as a parameter).
pub fn pullback_zero_section(f: &LocClass) -> LocClass {
    f.clone()
}

/// Fixed-point pushforward coefficients: c_w = F|_w / Λ•T_w𝔅.
pub fn to_pushforward(rs: &RootSystem, f: &LocClass) -> Vec<RatFunc> {
    (0..rs.order())
        .map(|w| f.vals[w].div(&RatFunc::from_poly(tangent_factor(rs, w))))
        .collect()
}

pub fn from_pushforward(rs: &RootSystem, coeffs: &[RatFunc]) -> LocClass {
    LocClass {
        vals: (0..rs.order())
            .map(|w| coeffs[w].mul(&RatFunc::from_poly(tangent_factor(rs, w))))
            .collect(),
    }
}

/// Serre–Grothendieck duality 𝒟: bar involution on pushforward
/// coefficients (q ↦ q^{−1}, e^λ ↦ e^{−λ}).
pub fn serre_dual(rs: &RootSystem, f: &LocClass) -> LocClass {
    let coeffs: Vec<RatFunc> = to_pushforward(rs, f).iter().map(|c| c.bar()).collect();
    from_pushforward(rs, &coeffs)
}

/// Tensoring with the dualizing complex ω• = 𝓛_{2ρ}[dim 𝔅]: at the fixed
/// point v this multiplies by (−1)^{dim 𝔅} e^{2vρ}.
pub fn omega_twist(rs: &RootSystem, f: &LocClass) -> LocClass {
    let two_rho = vec![2i64; rs.rank];
    let mut out = LocClass::zero(rs);
    for v in 0..rs.order() {
        let ch = LaurentPoly::e_weight(rs.rank, &rs.act_weight_i(v, &two_rho));
        out.vals[v] = f.vals[v].mul(&RatFunc::from_poly(ch));
    }
    if rs.num_pos_roots() % 2 == 1 {
        out = out.neg();
    }
    out
}

/// Full stab₊ family (duality solve against stab₋).
fn plus_family(rs: &RootSystem) -> Vec<LocClass> {
    let minus = stablecalc::stab_minus(rs);
    let ctx = stablecalc::KCtx::new(rs);
    stablecalc::stab_plus(rs, &ctx, &minus)
}

/// MC_{−q^{−1}}(X(w)°) for all w via the stab₊ route:
/// q^{−ℓ(w)/2} 𝒟(i* stab₊(w)).
pub fn mc_family_x(rs: &RootSystem) -> Vec<LocClass> {
    let plus = plus_family(rs);
    (0..rs.order())
        .map(|w| {
            let c = RatFunc::from_poly(LaurentPoly::q_half(rs.rank, -(rs.len(w) as i64)));
            serre_dual(rs, &pullback_zero_section(&plus[w])).scale(&c)
        })
        .collect()
}

/// MC_{−q^{−1}}(Y(w)°) for all w via the stab₋ route:
/// q^{ℓ(w)/2 − dim 𝔅} i*(stab₋(w)) ⊗ [ω•].
pub fn mc_family_y(rs: &RootSystem) -> Vec<LocClass> {
    let minus = stablecalc::stab_minus(rs);
    let dim = rs.num_pos_roots() as i64;
    (0..rs.order())
        .map(|w| {
            let c = RatFunc::from_poly(LaurentPoly::q_half(
                rs.rank,
                rs.len(w) as i64 - 2 * dim,
            ));
            omega_twist(rs, &pullback_zero_section(&minus[w])).scale(&c)
        })
        .collect()
}

/// λ_y(T*𝔅) with y = −q^{−1}: restriction ∏_{α>0}(1 − q^{−1}e^{vα}) at v.
pub fn lambda_y_cotangent(rs: &RootSystem) -> LocClass {
    let one = LaurentPoly::one(rs.rank);
    let qinv = LaurentPoly::q_half(rs.rank, -2);
    LocClass {
        vals: (0..rs.order())
            .map(|v| {
                let mut p = one.clone();
                for a in &rs.positive_roots {
                    let e = crate::heckealg::e_root(rs, &rs.act_alpha(v, a));
                    p = p.mul(&one.sub(&qinv.mul(&e)));
                }
                RatFunc::from_poly(p)
            })
            .collect(),
    }
}

/// Demazure operator (∂_i f)(v) = (f(v) − e^{vα_i}f(vs_i))/(1 − e^{vα_i}).
pub fn demazure(rs: &RootSystem, i: usize, f: &LocClass) -> LocClass {
    let one = LaurentPoly::one(rs.rank);
    let si = rs.simple(i);
    LocClass {
        vals: (0..rs.order())
            .map(|v| {
                let ev = crate::heckealg::e_root(rs, &rs.act_alpha(v, &rs.simple_root(i)));
                let num = f.vals[v].sub(&RatFunc::from_poly(ev.clone()).mul(&f.vals[rs.mul(v, si)]));
                num.div(&RatFunc::from_poly(one.sub(&ev)))
            })
            .collect(),
    }
}

/// Structure-sheaf classes [𝒪_{X(w)}] by the Demazure recursion seeded at
/// the point class [𝒪_{X(e)}]|_e = ∏_{α>0}(1−e^α).
pub fn schubert_sheaf_family(rs: &RootSystem) -> Vec<LocClass> {
    let mut fam: Vec<Option<LocClass>> = vec![None; rs.order()];
    let mut seed = LocClass::zero(rs);
    seed.vals[rs.id()] = RatFunc::from_poly(tangent_factor(rs, rs.id()));
    fam[rs.id()] = Some(seed);
    let mut order: Vec<WIdx> = (0..rs.order()).collect();
    order.sort_by_key(|&w| rs.len(w));
    for w in order {
        if fam[w].is_some() {
            continue;
        }
        let i = *rs.word(w).last().expect("non-identity element has a word");
        let prev = rs.mul(w, rs.simple(i));
        let f = fam[prev].as_ref().expect("shorter element already built");
        fam[w] = Some(demazure(rs, i, f));
    }
    fam.into_iter().map(|f| f.expect("family complete")).collect()
}

/// Expand a class in the structure-sheaf basis [𝒪_{X(u)}] by a triangular
/// solve over descending length.
pub fn expand_in_sheaf_basis(
    rs: &RootSystem,
    f: &LocClass,
) -> Result<BTreeMap<WIdx, RatFunc>, Error> {
    let sheaves = schubert_sheaf_family(rs);
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    let mut order: Vec<WIdx> = (0..rs.order()).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(rs.len(u)));
    for u in order {
        let val = rem.vals[u].clone();
        if val.is_zero() {
            continue;
        }
        let c = val.div(&sheaves[u].vals[u]);
        rem = rem.sub(&sheaves[u].scale(&c));
        out.insert(u, c);
    }
    if !rem.is_zero() {
        return Err(Error::Internal("structure-sheaf expansion left a remainder".into()));
    }
    Ok(out)
}

/// Expansion MC(X(w)°) = Σ_{u≤w} a(w,u)[𝒪_{X(u)}].
pub fn mc_expand(rs: &RootSystem, w: WIdx) -> Result<BTreeMap<WIdx, RatFunc>, Error> {
    expand_in_sheaf_basis(rs, &mc_family_x(rs)[w])
}

/// Specialize a genuine (polynomial-entry) class at y = 0, i.e. q^{−1} = 0:
/// rewrite q = −y^{−1} and keep the y-constant term.  Errors if an entry has
/// a pole at y = 0.
pub fn y_zero_class(rs: &RootSystem, f: &LocClass) -> Result<LocClass, Error> {
    let mut out = LocClass::zero(rs);
    for v in 0..rs.order() {
        let p = f.vals[v].subst_q_neg_yinv().as_poly()?;
        let mut kept = LaurentPoly::zero(rs.rank);
        for (k, c) in &p.terms {
            if k.y < 0 {
                return Err(Error::NotPolynomial);
            }
            if k.y == 0 {
                kept.terms.insert(k.clone(), c.clone());
            }
        }
        out.vals[v] = RatFunc::from_poly(kept);
    }
    Ok(out)
}
