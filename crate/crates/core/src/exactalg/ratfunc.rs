//! Fraction field of `LaurentPoly` with lazy reduction: monomial content is
//! cancelled eagerly, exact polynomial division only on demand.

use num::One;

use crate::error::Error;
use crate::weyl::{Rat, RootSystem, WIdx};

use super::poly::LaurentPoly;

#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RatFunc { num, den };
        f.light_reduce();
        f
    }

    pub fn from_poly(p: LaurentPoly) -> RatFunc {
        let rank = p.rank;
        RatFunc { num: p, den: LaurentPoly::one(rank) }
    }

    pub fn zero(rank: usize) -> RatFunc {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> RatFunc {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn int(rank: usize, n: i64) -> RatFunc {
        Self::from_poly(LaurentPoly::int(rank, n))
    }

    pub fn rank(&self) -> usize {
        self.num.rank
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cheap normalization: monomial denominators are absorbed, the
    /// denominator is made content-free with unit leading coefficient.
    fn light_reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.rank());
            return;
        }
        if let Some((k, c)) = self.den.as_monomial().map(|(k, c)| (k.clone(), c.clone())) {
            self.num = self.num.shift_key(&k.neg()).scale(&(Rat::one() / c));
            self.den = LaurentPoly::one(self.rank());
            return;
        }
        if let Some(min) = self.den.min_key() {
            let is_unit = min == super::poly::ExpKey::unit(self.rank());
            if !is_unit {
                self.den = self.den.shift_key(&min.neg());
                self.num = self.num.shift_key(&min.neg());
            }
        }
        let lead = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
        if self.num == self.den {
            self.num = LaurentPoly::one(self.rank());
            self.den = LaurentPoly::one(self.rank());
        }
    }

    /// Cancel the given polynomial factors wherever they divide numerator
    /// and denominator simultaneously.  Cheap structural reduction for
    /// computations whose denominators are known products of binomials.
    pub fn cancel_factors(&self, factors: &[LaurentPoly]) -> RatFunc {
        if self.num.is_zero() || self.den.is_one() {
            return self.clone();
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut changed = false;
        for f in factors {
            while !den.is_one() {
                match den.try_div(f) {
                    Some(d2) => match num.try_div(f) {
                        Some(n2) => {
                            num = n2;
                            den = d2;
                            changed = true;
                        }
                        None => break,
                    },
                    None => break,
                }
            }
        }
        if changed {
            RatFunc::new(num, den)
        } else {
            self.clone()
        }
    }

    /// Full reduction by exact division (both directions).
    pub fn normal_form(&self) -> RatFunc {
        let mut f = self.clone();
        f.light_reduce();
        if f.den.is_one() || f.num.is_zero() {
            return f;
        }
        if let Some(q) = f.num.try_div(&f.den) {
            return RatFunc::from_poly(q);
        }
        if let Some(t) = f.den.try_div(&f.num) {
            return RatFunc::new(LaurentPoly::one(f.rank()), t);
        }
        f
    }

    pub fn is_polynomial(&self) -> bool {
        self.normal_form().den.is_one()
    }

    pub fn as_poly(&self) -> Result<LaurentPoly, Error> {
        let f = self.normal_form();
        if f.den.is_one() {
            Ok(f.num)
        } else {
            Err(Error::NotPolynomial)
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        // shortcut when one denominator divides the other
        if let Some(t) = o.den.try_div(&self.den) {
            return RatFunc::new(self.num.mul(&t).add(&o.num), o.den.clone());
        }
        if let Some(t) = self.den.try_div(&o.den) {
            return RatFunc::new(self.num.add(&o.num.mul(&t)), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        // cross-cancel before multiplying to keep degrees down
        let mut n1 = self.num.clone();
        let mut d1 = self.den.clone();
        let mut n2 = o.num.clone();
        let mut d2 = o.den.clone();
        if !d2.is_one() {
            if let Some(q) = n1.try_div(&d2) {
                n1 = q;
                d2 = LaurentPoly::one(self.rank());
            }
        }
        if !d1.is_one() {
            if let Some(q) = n2.try_div(&d1) {
                n2 = q;
                d1 = LaurentPoly::one(self.rank());
            }
        }
        RatFunc::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverting zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn eq(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn weyl_act_k(&self, rs: &RootSystem, w: WIdx) -> RatFunc {
        RatFunc::new(self.num.weyl_act_k(rs, w), self.den.weyl_act_k(rs, w))
    }

    pub fn weyl_act_coh(&self, rs: &RootSystem, w: WIdx) -> RatFunc {
        RatFunc::new(self.num.weyl_act_coh(rs, w), self.den.weyl_act_coh(rs, w))
    }

    pub fn bar(&self) -> RatFunc {
        RatFunc::new(self.num.bar(), self.den.bar())
    }

    pub fn invert_characters(&self) -> RatFunc {
        RatFunc::new(self.num.invert_characters(), self.den.invert_characters())
    }

    pub fn subst_q_one(&self) -> Result<RatFunc, Error> {
        let den = self.den.subst_q_one();
        if den.is_zero() {
            return Err(Error::Internal("q = 1 annihilates a denominator".into()));
        }
        Ok(RatFunc::new(self.num.subst_q_one(), den))
    }

    pub fn subst_h_one(&self) -> Result<RatFunc, Error> {
        let den = self.den.subst_h_one();
        if den.is_zero() {
            return Err(Error::Internal("ħ = 1 annihilates a denominator".into()));
        }
        Ok(RatFunc::new(self.num.subst_h_one(), den))
    }

    pub fn subst_y_neg_qinv(&self) -> RatFunc {
        RatFunc::new(self.num.subst_y_neg_qinv(), self.den.subst_y_neg_qinv())
    }

    pub fn subst_q_neg_yinv(&self) -> RatFunc {
        RatFunc::new(self.num.subst_q_neg_yinv(), self.den.subst_q_neg_yinv())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        RatFunc::eq(self, other)
    }
}

impl Eq for RatFunc {}
