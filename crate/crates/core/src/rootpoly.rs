//! Root polynomials: the algebra Q̂_W over the doubled variable set (a y-copy
//! and an x-copy of the character lattice), the elements R±_w, their
//! τ-expansion coefficients K_{v,w}, the evaluation map, and the resulting
//! localization formula for stab⁻.

use std::collections::BTreeMap;


use crate::error::Error;
use crate::exactalg::{ExpKey, LaurentPoly, RatFunc};
use crate::heckealg::{self, LocClass, Sign};
use crate::weyl::{Rat, RootSystem, WIdx};

/// Weyl action on the x-block only (the last `rank` lattice slots).
fn weyl_act_x(rs: &RootSystem, w: WIdx, p: &LaurentPoly) -> LaurentPoly {
    let r = rs.rank;
    let mut out = LaurentPoly::zero(p.rank);
    for (k, c) in &p.terms {
        let xpart = rs.act_weight_i(w, &k.lam[r..]);
        let mut lam = k.lam[..r].to_vec();
        lam.extend(xpart);
        let key = ExpKey { lam, q2: k.q2, y: k.y, h: k.h };
        match out.terms.get_mut(&key) {
            Some(old) => {
                *old += c.clone();
            }
            None => {
                out.terms.insert(key, c.clone());
            }
        }
    }
    out.terms.retain(|_, c| !num::Zero::is_zero(c));
    out
}

fn weyl_act_x_rf(rs: &RootSystem, w: WIdx, f: &RatFunc) -> RatFunc {
    RatFunc::new(weyl_act_x(rs, w, &f.num), weyl_act_x(rs, w, &f.den))
}

/// e^λ in the chosen copy of the lattice, as a rank-2r polynomial.
fn e_block(rs: &RootSystem, alpha: &[Rat], y_copy: bool) -> LaurentPoly {
    let r = rs.rank;
    let w = heckealg::root_weight_coords(rs, alpha);
    let mut lam = vec![0i64; 2 * r];
    let off = if y_copy { 0 } else { r };
    lam[off..off + r].copy_from_slice(&w);
    LaurentPoly::e_weight(2 * r, &lam)
}

/// Element of Q̂_W = Q^y ⊗ Q^x_W in the basis δ^x_w.
#[derive(Debug, Clone, PartialEq)]
pub struct QHatElt {
    pub terms: BTreeMap<WIdx, RatFunc>,
}

impl QHatElt {
    pub fn zero() -> Self {
        QHatElt { terms: BTreeMap::new() }
    }

    pub fn delta(rs: &RootSystem, w: WIdx) -> Self {
        let mut t = BTreeMap::new();
        t.insert(w, RatFunc::one(2 * rs.rank));
        QHatElt { terms: t }
    }

    fn insert_add(&mut self, w: WIdx, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old.add(&f);
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }

    pub fn add(&self, o: &QHatElt) -> QHatElt {
        let mut out = self.clone();
        for (w, f) in &o.terms {
            out.insert_add(*w, f.clone());
        }
        out
    }

    pub fn sub(&self, o: &QHatElt) -> QHatElt {
        let mut out = self.clone();
        for (w, f) in &o.terms {
            out.insert_add(*w, f.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> QHatElt {
        let mut out = QHatElt::zero();
        for (w, f) in &self.terms {
            out.insert_add(*w, f.mul(c));
        }
        out
    }

    /// Twisted product; the group part twists the x-block only.
    pub fn mul(&self, rs: &RootSystem, o: &QHatElt) -> QHatElt {
        let mut out = QHatElt::zero();
        for (w, p) in &self.terms {
            for (w2, p2) in &o.terms {
                out.insert_add(rs.mul(*w, *w2), p.mul(&weyl_act_x_rf(rs, *w, p2)));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The evaluation map: y_λ ⊗ x_μ ↦ x_λ x_μ (merge the y-copy into the
    /// x-copy).  Result stays in the doubled ring with empty y-block.
    pub fn ev(&self, rs: &RootSystem) -> QHatElt {
        let r = rs.rank;
        let merge = |p: &LaurentPoly| -> LaurentPoly {
            let mut out = LaurentPoly::zero(p.rank);
            for (k, c) in &p.terms {
                let mut lam = vec![0i64; 2 * r];
                for j in 0..r {
                    lam[r + j] = k.lam[j] + k.lam[r + j];
                }
                let key = ExpKey { lam, q2: k.q2, y: k.y, h: k.h };
                match out.terms.get_mut(&key) {
                    Some(old) => *old += c.clone(),
                    None => {
                        out.terms.insert(key, c.clone());
                    }
                }
            }
            out.terms.retain(|_, c| !num::Zero::is_zero(c));
            out
        };
        let mut out = QHatElt::zero();
        for (w, f) in &self.terms {
            out.insert_add(*w, RatFunc::new(merge(&f.num), merge(&f.den)));
        }
        out
    }
}

/// Binomial factors that occur in Q̂_W denominators: (1−q) and, for each
/// positive root β in either lattice copy, (1−e^β), (1−qe^β), (1−q^{−1}e^β).
/// Cancelling them keeps the lazy fractions from snowballing during the
/// τ-expansion elimination.
fn cancel_list(rs: &RootSystem) -> Vec<LaurentPoly> {
    let r2 = 2 * rs.rank;
    let one = LaurentPoly::one(r2);
    let q = LaurentPoly::q_half(r2, 2);
    let qinv = LaurentPoly::q_half(r2, -2);
    let mut out = vec![one.sub(&q)];
    for b in &rs.positive_roots {
        for y_copy in [true, false] {
            let eb = e_block(rs, b, y_copy);
            out.push(one.sub(&eb));
            out.push(one.sub(&q.mul(&eb)));
            out.push(one.sub(&qinv.mul(&eb)));
        }
    }
    out
}

impl QHatElt {
    fn reduce(&self, factors: &[LaurentPoly]) -> QHatElt {
        QHatElt {
            terms: self
                .terms
                .iter()
                .map(|(w, f)| (*w, f.cancel_factors(factors)))
                .collect(),
        }
    }
}

/// τ^{±x}_i: the Demazure–Lusztig element with coefficients in the x-copy.
pub fn tau_x(rs: &RootSystem, sign: Sign, i: usize) -> QHatElt {
    let r2 = 2 * rs.rank;
    let one = LaurentPoly::one(r2);
    let q = LaurentPoly::q_half(r2, 2);
    let alpha = rs.simple_root(i);
    let neg: Vec<Rat> = alpha.iter().map(|c| -c.clone()).collect();
    let ea = e_block(rs, &alpha, false);
    let ena = e_block(rs, &neg, false);
    let c1 = RatFunc::new(q.sub(&one), one.sub(&ea));
    let c2 = match sign {
        Sign::Plus => RatFunc::new(q.sub(&ea), one.sub(&ena)),
        Sign::Minus => RatFunc::new(one.sub(&q.mul(&ena)), one.sub(&ea)),
    };
    let mut z = QHatElt::zero();
    z.insert_add(0, c1);
    z.insert_add(rs.simple(i), c2);
    z
}

/// τ^{±x}_w along the canonical reduced word.
pub fn tau_x_word(rs: &RootSystem, sign: Sign, w: WIdx) -> QHatElt {
    let mut z = QHatElt::delta(rs, 0);
    for &i in rs.word(w) {
        z = z.mul(rs, &tau_x(rs, sign, i));
    }
    z
}

/// h_i(β) = τ^{±x}_i − (q−1)/y_{−β}, with y_λ = 1 − e^{−λ}.
pub fn h_factor(rs: &RootSystem, sign: Sign, i: usize, beta: &[Rat]) -> QHatElt {
    let r2 = 2 * rs.rank;
    let one = LaurentPoly::one(r2);
    let q = LaurentPoly::q_half(r2, 2);
    // y_{−β} = 1 − e^{β} in the y-copy
    let ybeta = one.sub(&e_block(rs, beta, true));
    let c = RatFunc::new(q.sub(&one), ybeta);
    let mut z = tau_x(rs, sign, i);
    z.insert_add(0, c.neg());
    z
}

/// The root polynomial R±_w = ∏_j h_{i_j}(β_j) for the canonical reduced
/// word, with β_j = s_{i_1}···s_{i_{j-1}}(α_{i_j}).
pub fn root_polynomial(rs: &RootSystem, sign: Sign, w: WIdx) -> QHatElt {
    let word = rs.word(w);
    let factors = cancel_list(rs);
    let mut z = QHatElt::delta(rs, 0);
    let mut prefix = rs.id();
    for &i in word {
        let beta = rs.act_alpha(prefix, &rs.simple_root(i));
        z = z.mul(rs, &h_factor(rs, sign, i, &beta)).reduce(&factors);
        prefix = rs.mul(prefix, rs.simple(i));
    }
    z
}

/// Expansion coefficients R±_w = Σ_{v≤w} K_{v,w} τ^{±x}_v, reported in the
/// doubled ring (they lie in Q^y).
///
/// The y-copy scalars (q−1)/y_{−β} are central, so expanding the product
/// ∏_j h_{i_j}(β_j) needs only the quadratic relation
/// τ_iτ_i = (q−1)τ_i + q (identical for both signs, whence K^{τ+} = K^{τ−});
/// this runs the product left to right without ever touching x-copy
/// coefficients.
pub fn k_coefficients(
    rs: &RootSystem,
    _sign: Sign,
    w: WIdx,
) -> Result<BTreeMap<WIdx, RatFunc>, Error> {
    let r2 = 2 * rs.rank;
    let one = LaurentPoly::one(r2);
    let q = LaurentPoly::q_half(r2, 2);
    let qr = RatFunc::from_poly(q.clone());
    let qm1 = RatFunc::from_poly(q.sub(&one));
    fn insert_add(m: &mut BTreeMap<WIdx, RatFunc>, v: WIdx, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match m.remove(&v) {
            Some(old) => {
                let s = old.add(&f);
                if !s.is_zero() {
                    m.insert(v, s);
                }
            }
            None => {
                m.insert(v, f);
            }
        }
    }
    let mut k: BTreeMap<WIdx, RatFunc> = BTreeMap::new();
    k.insert(rs.id(), RatFunc::one(r2));
    let mut prefix = rs.id();
    for &i in rs.word(w) {
        let beta = rs.act_alpha(prefix, &rs.simple_root(i));
        // (q−1)/y_{−β} with y_{−β} = 1 − e^β in the y-copy
        let c = RatFunc::new(q.sub(&one), one.sub(&e_block(rs, &beta, true)));
        let mut next = BTreeMap::new();
        for (v, kv) in &k {
            let vs = rs.mul(*v, rs.simple(i));
            if rs.len(vs) > rs.len(*v) {
                insert_add(&mut next, vs, kv.clone());
            } else {
                insert_add(&mut next, *v, kv.mul(&qm1));
                insert_add(&mut next, vs, kv.mul(&qr));
            }
            insert_add(&mut next, *v, kv.mul(&c).neg());
        }
        k = next;
        prefix = rs.mul(prefix, rs.simple(i));
    }
    Ok(k)
}

/// The same expansion by brute-force descending-length elimination against
/// explicitly multiplied-out τ^{±x}_v; exponential in ℓ(w) but fully
/// independent of the recursion above, so it serves as a cross-check.
pub fn k_coefficients_elimination(
    rs: &RootSystem,
    sign: Sign,
    w: WIdx,
) -> Result<BTreeMap<WIdx, RatFunc>, Error> {
    let factors = cancel_list(rs);
    let mut r = root_polynomial(rs, sign, w);
    let mut out = BTreeMap::new();
    let mut by_len: Vec<WIdx> = (0..rs.order()).filter(|&v| rs.bruhat_leq(v, w)).collect();
    by_len.sort_by_key(|&v| std::cmp::Reverse(rs.len(v)));
    for v in by_len {
        let c = match r.terms.get(&v) {
            Some(c) => c.clone(),
            None => continue,
        };
        let tau_v = tau_x_word(rs, sign, v);
        let lead = tau_v.terms.get(&v).expect("τ_v misses its leading δ").clone();
        let k = c.div(&lead).cancel_factors(&factors);
        if k.is_zero() {
            continue;
        }
        r = r.sub(&tau_v.scale(&k)).reduce(&factors);
        out.insert(v, k);
    }
    if !r.is_zero() {
        return Err(Error::Internal("τ-expansion did not terminate at zero".into()));
    }
    Ok(out)
}

/// Project a y-only doubled-ring element down to the ordinary character
/// ring.  The representation may carry a common mixed factor: if f = p(y)/s(y)
/// then grouping numerator and denominator by x-monomial gives p·d_m = s·n_m
/// slotwise, so any slot with d_m ≠ 0 yields f = n_m/d_m.  We take one such
/// slot and certify the quotient by exact cross-multiplication.
pub fn project_y(rs: &RootSystem, f: &RatFunc) -> Result<RatFunc, Error> {
    let r = rs.rank;
    // y-part coefficient polynomials of each x-monomial (x-block of the key)
    let split = |p: &LaurentPoly| -> BTreeMap<Vec<i64>, LaurentPoly> {
        let mut out: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        for (k, c) in &p.terms {
            let xm = k.lam[r..].to_vec();
            let mut lam = k.lam.clone();
            for a in lam[r..].iter_mut() {
                *a = 0;
            }
            let key = ExpKey { lam, q2: k.q2, y: k.y, h: k.h };
            out.entry(xm).or_insert_with(|| LaurentPoly::zero(p.rank)).terms.insert(key, c.clone());
        }
        out
    };
    let dens = split(&f.den);
    let nums = split(&f.num);
    let (xm, d_m) = dens.iter().next().ok_or_else(|| Error::Internal("zero denominator".into()))?;
    let n_m = nums.get(xm).cloned().unwrap_or_else(|| LaurentPoly::zero(f.num.rank.max(f.den.rank)));
    let cand = RatFunc::new(n_m, d_m.clone());
    if &cand != f {
        return Err(Error::Internal("coefficient is not y-only".into()));
    }
    let strip = |p: &LaurentPoly| -> LaurentPoly {
        let mut out = LaurentPoly::zero(r);
        for (k, c) in &p.terms {
            out.terms.insert(
                ExpKey { lam: k.lam[..r].to_vec(), q2: k.q2, y: k.y, h: k.h },
                c.clone(),
            );
        }
        out
    };
    Ok(RatFunc::new(strip(&cand.num), strip(&cand.den)))
}

/// stab⁻_w via root polynomials (Thm 6.3/6.5(3), with the q-prefactor
/// normalized to match the diagonal of property (3)):
/// stab⁻_w = q^{ℓ(w)/2} Σ_{v≥w} ∏_{α>0,v^{-1}α<0}(1−e^α)
///           ∏_{α>0,v^{-1}α>0}(1−qe^{−α}) · K_{w,v} f_v.
pub fn stab_minus_via_rootpoly(rs: &RootSystem, w: WIdx) -> Result<LocClass, Error> {
    Ok(stab_family_via_rootpoly(rs)?.swap_remove(w))
}

/// The whole stab⁻ family by one pass of K-coefficient elimination.
pub fn stab_family_via_rootpoly(rs: &RootSystem) -> Result<Vec<LocClass>, Error> {
    let rank = rs.rank;
    let one = LaurentPoly::one(rank);
    let q = LaurentPoly::q_half(rank, 2);
    // per-v localization factor ∏_{v^{-1}α<0}(1−e^α)∏_{v^{-1}α>0}(1−qe^{−α})
    let factors: Vec<RatFunc> = (0..rs.order())
        .map(|v| {
            let vi = rs.inv(v);
            let mut prod = LaurentPoly::one(rank);
            for b in &rs.positive_roots {
                let vib = rs.act_alpha(vi, b);
                if vib.iter().any(|c| num::Signed::is_negative(c)) {
                    prod = prod.mul(&one.sub(&heckealg::e_root(rs, b)));
                } else {
                    let nb: Vec<Rat> = b.iter().map(|c| -c.clone()).collect();
                    prod = prod.mul(&one.sub(&q.mul(&heckealg::e_root(rs, &nb))));
                }
            }
            RatFunc::from_poly(prod)
        })
        .collect();
    let mut fam: Vec<LocClass> = (0..rs.order()).map(|_| LocClass::zero(rs)).collect();
    for v in 0..rs.order() {
        let ks = k_coefficients(rs, Sign::Minus, v)?;
        for (w, k) in &ks {
            fam[*w].vals[v] = factors[v].mul(&project_y(rs, k)?);
        }
    }
    for (w, f) in fam.iter_mut().enumerate() {
        let scale = RatFunc::from_poly(LaurentPoly::q_half(rank, rs.len(w) as i64));
        *f = f.scale(&scale);
    }
    Ok(fam)
}

/// Verdicts for the two displays of Thm 6.3/6.5(1): ev(R^{τ+}_w) against the
/// (q−e^α)/(1−e^{−α}) pattern and ev(R^{τ−}_w) against (1−qe^{−α})/(1−e^α).
/// (The paper prints "R^{τ+}" in both; the second is read as R^{τ−}.)
pub fn ev_product_verdicts(rs: &RootSystem, w: WIdx) -> (bool, bool) {
    let r2 = 2 * rs.rank;
    let one = LaurentPoly::one(r2);
    let q = LaurentPoly::q_half(r2, 2);
    let wi = rs.inv(w);
    let mut plus_prod = RatFunc::one(r2);
    let mut minus_prod = RatFunc::one(r2);
    for b in &rs.positive_roots {
        let wib = rs.act_alpha(wi, b);
        if wib.iter().any(|c| num::Signed::is_negative(c)) {
            let nb: Vec<Rat> = b.iter().map(|c| -c.clone()).collect();
            let ea = e_block(rs, b, false);
            let ena = e_block(rs, &nb, false);
            plus_prod = plus_prod.mul(&RatFunc::new(q.sub(&ea), one.sub(&ena)));
            minus_prod = minus_prod.mul(&RatFunc::new(one.sub(&q.mul(&ena)), one.sub(&ea)));
        }
    }
    let want_plus = QHatElt::delta(rs, w).scale(&plus_prod);
    let want_minus = QHatElt::delta(rs, w).scale(&minus_prod);
    let got_plus = root_polynomial(rs, Sign::Plus, w).ev(rs);
    let got_minus = root_polynomial(rs, Sign::Minus, w).ev(rs);
    (got_plus == want_plus, got_minus == want_minus)
}
