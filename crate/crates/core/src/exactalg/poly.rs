//! Laurent polynomials over Q in one shared exponent shape: a lattice part
//! (weight coordinates for K-theory, variable powers for cohomology), a
//! half-integer q slot, a y slot, and an ħ slot.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::weyl::{Rat, RootSystem, WIdx};

/// Exponent of one monomial.  `q2` counts powers of q^{1/2}.  The derived
/// `Ord` (lam lexicographic, then q2, y, h) is the canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpKey {
    pub lam: Vec<i64>,
    pub q2: i64,
    pub y: i64,
    pub h: i64,
}

impl ExpKey {
    pub fn unit(rank: usize) -> Self {
        ExpKey { lam: vec![0; rank], q2: 0, y: 0, h: 0 }
    }

    pub fn add(&self, o: &ExpKey) -> ExpKey {
        ExpKey {
            lam: self.lam.iter().zip(&o.lam).map(|(a, b)| a + b).collect(),
            q2: self.q2 + o.q2,
            y: self.y + o.y,
            h: self.h + o.h,
        }
    }

    pub fn sub(&self, o: &ExpKey) -> ExpKey {
        ExpKey {
            lam: self.lam.iter().zip(&o.lam).map(|(a, b)| a - b).collect(),
            q2: self.q2 - o.q2,
            y: self.y - o.y,
            h: self.h - o.h,
        }
    }

    pub fn neg(&self) -> ExpKey {
        ExpKey {
            lam: self.lam.iter().map(|a| -a).collect(),
            q2: -self.q2,
            y: -self.y,
            h: -self.h,
        }
    }

    fn componentwise_min(&self, o: &ExpKey) -> ExpKey {
        ExpKey {
            lam: self.lam.iter().zip(&o.lam).map(|(a, b)| *a.min(b)).collect(),
            q2: self.q2.min(o.q2),
            y: self.y.min(o.y),
            h: self.h.min(o.h),
        }
    }

    fn dominates(&self, o: &ExpKey) -> bool {
        self.lam.iter().zip(&o.lam).all(|(a, b)| a >= b)
            && self.q2 >= o.q2
            && self.y >= o.y
            && self.h >= o.h
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub rank: usize,
    pub terms: BTreeMap<ExpKey, Rat>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, c: Rat) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(ExpKey::unit(rank), c);
        }
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rat::one())
    }

    pub fn int(rank: usize, n: i64) -> Self {
        Self::constant(rank, Rat::from_integer(n.into()))
    }

    pub fn monomial(rank: usize, key: ExpKey, c: Rat) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(key, c);
        }
        p
    }

    /// e^λ, λ in fundamental-weight coordinates (K-theory mode).
    pub fn e_weight(rank: usize, lam: &[i64]) -> Self {
        Self::monomial(rank, ExpKey { lam: lam.to_vec(), q2: 0, y: 0, h: 0 }, Rat::one())
    }

    /// q^{n/2}
    pub fn q_half(rank: usize, n: i64) -> Self {
        Self::monomial(rank, ExpKey { lam: vec![0; rank], q2: n, y: 0, h: 0 }, Rat::one())
    }

    pub fn y_pow(rank: usize, n: i64) -> Self {
        Self::monomial(rank, ExpKey { lam: vec![0; rank], q2: 0, y: n, h: 0 }, Rat::one())
    }

    pub fn hbar(rank: usize) -> Self {
        Self::monomial(rank, ExpKey { lam: vec![0; rank], q2: 0, y: 0, h: 1 }, Rat::one())
    }

    /// Linear form Σ c_j a_j in the cohomology variables.
    pub fn alpha_linear(rank: usize, coeffs: &[Rat]) -> Self {
        let mut p = Self::zero(rank);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut lam = vec![0; rank];
                lam[j] = 1;
                p.terms.insert(ExpKey { lam, q2: 0, y: 0, h: 0 }, c.clone());
            }
        }
        p
    }

    /// The linear polynomial of a root given in simple-root coordinates
    /// (cohomology mode).
    pub fn root_form(rs: &RootSystem, alpha_coords: &[Rat]) -> Self {
        Self::alpha_linear(rs.rank, alpha_coords)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExpKey::unit(self.rank))
                .map_or(false, |c| c.is_one())
    }

    /// Some((key, coeff)) when the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(&ExpKey, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_add(&mut self, key: ExpKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.rank, o.rank);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.rank, o.rank);
        let mut out = LaurentPoly::zero(self.rank);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out.insert_add(k1.add(k2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn shift_key(&self, key: &ExpKey) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.add(key), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.rank);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Componentwise minimum of all exponents (the monomial content).
    pub fn min_key(&self) -> Option<ExpKey> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, k| acc.componentwise_min(k)))
    }

    /// Largest monomial in the canonical order.
    pub fn leading(&self) -> Option<(&ExpKey, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: Some(q) with self = q·d, or None if not divisible.
    pub fn try_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        debug_assert_eq!(self.rank, d.rank);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.rank));
        }
        if let Some((dk, dc)) = d.as_monomial() {
            let inv = Rat::one() / dc.clone();
            return Some(self.shift_key(&dk.neg()).scale(&inv));
        }
        // normalize both to have content 0 so the division runs over N^n,
        // where the canonical order is a genuine monomial well-order
        let smin = self.min_key().unwrap();
        let dmin = d.min_key().unwrap();
        let f = self.shift_key(&smin.neg());
        let g = d.shift_key(&dmin.neg());
        let (gk, gc) = g.leading().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut r = f.terms;
        let mut quo = LaurentPoly::zero(self.rank);
        while let Some((rk, rc)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            if !rk.dominates(&gk) {
                return None;
            }
            let qk = rk.sub(&gk);
            let qc = rc / gc.clone();
            // subtract (qk, qc)·g from the remainder in place
            for (k, c) in &g.terms {
                let key = qk.add(k);
                let entry = r.entry(key.clone()).or_insert_with(Rat::zero);
                *entry -= qc.clone() * c.clone();
                if entry.is_zero() {
                    r.remove(&key);
                }
            }
            quo.terms.insert(qk, qc);
        }
        Some(quo.shift_key(&smin.sub(&dmin)))
    }

    /// Weyl action in K-theory mode: e^λ ↦ e^{wλ}; q, y, ħ fixed.
    pub fn weyl_act_k(&self, rs: &RootSystem, w: WIdx) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            let lam = rs.act_weight_i(w, &k.lam);
            out.insert_add(ExpKey { lam, q2: k.q2, y: k.y, h: k.h }, c.clone());
        }
        out
    }

    /// Weyl action in cohomology mode: each variable a_i ↦ the linear form
    /// of w(α_i); q, y, ħ fixed.  Requires nonnegative variable exponents.
    pub fn weyl_act_coh(&self, rs: &RootSystem, w: WIdx) -> LaurentPoly {
        let images: Vec<LaurentPoly> = (0..rs.rank)
            .map(|i| LaurentPoly::root_form(rs, &rs.act_alpha(w, &rs.simple_root(i))))
            .collect();
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            let mut term = LaurentPoly::monomial(
                self.rank,
                ExpKey { lam: vec![0; self.rank], q2: k.q2, y: k.y, h: k.h },
                c.clone(),
            );
            for (i, &p) in k.lam.iter().enumerate() {
                assert!(p >= 0, "negative variable power under substitution");
                term = term.mul(&images[i].pow(p as usize));
            }
            out = out.add(&term);
        }
        out
    }

    /// Duality involution: e^λ ↦ e^{−λ}, q^{1/2} ↦ q^{−1/2}, y ↦ y^{−1}.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        ExpKey {
                            lam: k.lam.iter().map(|a| -a).collect(),
                            q2: -k.q2,
                            y: -k.y,
                            h: k.h,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Character inversion e^λ ↦ e^{−λ} only (q, y, ħ fixed).
    pub fn invert_characters(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        ExpKey {
                            lam: k.lam.iter().map(|a| -a).collect(),
                            q2: k.q2,
                            y: k.y,
                            h: k.h,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn subst_q_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            out.insert_add(ExpKey { q2: 0, ..k.clone() }, c.clone());
        }
        out
    }

    pub fn subst_h_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            out.insert_add(ExpKey { h: 0, ..k.clone() }, c.clone());
        }
        out
    }

    /// y ↦ −q^{−1}.
    pub fn subst_y_neg_qinv(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            let sign = if k.y % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.insert_add(
                ExpKey { q2: k.q2 - 2 * k.y, y: 0, ..k.clone() },
                c.clone() * sign,
            );
        }
        out
    }

    /// q ↦ −y^{−1}; requires integral q-powers.
    pub fn subst_q_neg_yinv(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (k, c) in &self.terms {
            assert!(k.q2 % 2 == 0, "fractional q-power under q ↦ -1/y");
            let m = k.q2 / 2;
            let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.insert_add(ExpKey { q2: 0, y: k.y - m, ..k.clone() }, c.clone() * sign);
        }
        out
    }

    /// Non-equivariant limit in cohomology mode: every root variable ↦ 0.
    pub fn subst_alpha_zero(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.lam.iter().all(|&p| p == 0))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest h-exponent present, or None when zero.
    pub fn h_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.h).max()
    }

    /// Coefficient of ħ^n as a polynomial in the remaining variables.
    pub fn h_coefficient(&self, n: i64) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.h == n)
                .map(|(k, c)| (ExpKey { h: 0, ..k.clone() }, c.clone()))
                .collect(),
        }
    }

    /// 1 − e^{−λ}  (λ in fundamental-weight coordinates).
    pub fn x_lambda(rank: usize, lam: &[i64]) -> LaurentPoly {
        let neg: Vec<i64> = lam.iter().map(|a| -a).collect();
        LaurentPoly::one(rank).sub(&LaurentPoly::e_weight(rank, &neg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::rat;

    fn ek(lam: Vec<i64>, q2: i64, y: i64, h: i64) -> ExpKey {
        ExpKey { lam, q2, y, h }
    }

    #[test]
    fn ring_basics() {
        let r = 2;
        let a = LaurentPoly::e_weight(r, &[1, 0]);
        let b = LaurentPoly::e_weight(r, &[0, 1]);
        let q = LaurentPoly::q_half(r, 2);
        let p = a.add(&b).mul(&a.sub(&b));
        let p2 = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(p, p2);
        assert!(a.sub(&a).is_zero());
        assert_eq!(q.mul(&q), LaurentPoly::q_half(r, 4));
        assert!(LaurentPoly::one(r).is_one());
    }

    #[test]
    fn no_zero_terms_stored() {
        let r = 1;
        let a = LaurentPoly::e_weight(r, &[1]);
        let s = a.add(&a.neg());
        assert!(s.terms.is_empty());
        let p = LaurentPoly::constant(r, rat(0));
        assert!(p.terms.is_empty());
    }

    #[test]
    fn bar_involution() {
        let r = 1;
        // bar(q^{1/2} e^α) = q^{-1/2} e^{-α} ; α has weight coords [2] in A1
        let m = LaurentPoly::q_half(r, 1).mul(&LaurentPoly::e_weight(r, &[2]));
        let expect = LaurentPoly::q_half(r, -1).mul(&LaurentPoly::e_weight(r, &[-2]));
        assert_eq!(m.bar(), expect);
        // bar(1 - q e^{-α}) = 1 - q^{-1} e^{α}
        let p = LaurentPoly::one(r)
            .sub(&LaurentPoly::q_half(r, 2).mul(&LaurentPoly::e_weight(r, &[-2])));
        let pe = LaurentPoly::one(r)
            .sub(&LaurentPoly::q_half(r, -2).mul(&LaurentPoly::e_weight(r, &[2])));
        assert_eq!(p.bar(), pe);
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn exact_division() {
        let r = 1;
        let x = LaurentPoly::e_weight(r, &[1]);
        let one = LaurentPoly::one(r);
        let a = one.sub(&x); // 1 - e
        let b = one.add(&x); // 1 + e
        let c = a.mul(&b); // 1 - e^2
        assert_eq!(c.try_div(&a), Some(b.clone()));
        assert_eq!(c.try_div(&b), Some(a.clone()));
        assert!(b.try_div(&a).is_none());
        // monomial divisor with negative exponents
        let m = LaurentPoly::e_weight(r, &[-3]);
        let q = c.try_div(&m).unwrap();
        assert_eq!(q.mul(&m), c);
        // Laurent content
        let d = a.shift_key(&ek(vec![-5], -1, 0, 0));
        let q2 = c.try_div(&d).unwrap();
        assert_eq!(q2.mul(&d), c);
    }

    #[test]
    fn weyl_act_k_simple_reflection() {
        let rs = crate::weyl::RootSystem::build('A', 1).unwrap();
        let s = rs.simple(0);
        let ea = LaurentPoly::e_weight(1, &[2]); // e^α
        assert_eq!(ea.weyl_act_k(&rs, s), LaurentPoly::e_weight(1, &[-2]));
        let q = LaurentPoly::q_half(1, 1);
        assert_eq!(q.weyl_act_k(&rs, s), q);
    }

    #[test]
    fn weyl_act_coh_substitution() {
        let rs = crate::weyl::RootSystem::build('A', 2).unwrap();
        let s1 = rs.simple(0);
        let a1 = LaurentPoly::alpha_linear(2, &[rat(1), rat(0)]);
        let a2 = LaurentPoly::alpha_linear(2, &[rat(0), rat(1)]);
        // s1(α1) = -α1, s1(α2) = α1+α2
        assert_eq!(a1.weyl_act_coh(&rs, s1), a1.neg());
        assert_eq!(a2.weyl_act_coh(&rs, s1), a1.add(&a2));
        // ring homomorphism on a product
        let p = a1.mul(&a2).add(&a2.pow(2));
        let q = a1.weyl_act_coh(&rs, s1).mul(&a2.weyl_act_coh(&rs, s1))
            .add(&a2.weyl_act_coh(&rs, s1).pow(2));
        assert_eq!(p.weyl_act_coh(&rs, s1), q);
    }

    #[test]
    fn substitutions() {
        let r = 1;
        let p = LaurentPoly::q_half(r, 2).sub(&LaurentPoly::one(r)); // q - 1
        assert!(p.subst_q_one().is_zero());
        let y = LaurentPoly::y_pow(r, 1);
        // y ↦ -q^{-1} then q ↦ -y^{-1} is the identity on y
        assert_eq!(y.subst_y_neg_qinv().subst_q_neg_yinv(), y);
        let h2 = LaurentPoly::hbar(r).pow(2);
        assert!(h2.subst_h_one().is_one());
    }
}
