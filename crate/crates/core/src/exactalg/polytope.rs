//! Newton polytopes of lattice exponents and exact containment tests, used by
//! the degree axiom.  Naive exact methods; intended for rank ≤ 3.

use num::Zero;

use crate::error::Error;
use crate::weyl::Rat;

use super::poly::LaurentPoly;

#[derive(Debug, Clone)]
pub struct Polytope {
    pub dim: usize,
    /// Generating points (a superset of the vertex set).
    pub points: Vec<Vec<Rat>>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()).sum()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

/// Row-reduce, returning the rank; `m` is modified in place.
fn row_reduce(m: &mut Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank >= rows {
            break;
        }
        let piv = (rank..rows).find(|&r| !m[r][c].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, piv);
        let p = m[rank][c].clone();
        for cc in 0..cols {
            m[rank][cc] = m[rank][cc].clone() / p.clone();
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..cols {
                    m[r][cc] = m[r][cc].clone() - f.clone() * m[rank][cc].clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solve Σ c_j basis_j = target exactly; None if inconsistent.
fn solve_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = target.len();
    let k = basis.len();
    // n equations, k unknowns
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = (0..k).map(|j| basis[j][r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    row_reduce(&mut aug);
    // inconsistent iff a pivot sits in the last column
    for row in &aug {
        if row[..k].iter().all(|x| x.is_zero()) && !row[k].is_zero() {
            return None;
        }
    }
    // back-substitute from the reduced form
    let mut sol = vec![Rat::zero(); k];
    for row in &aug {
        if let Some(lead) = (0..k).find(|&c| !row[c].is_zero()) {
            sol[lead] = row[k].clone();
        }
    }
    // verify (free variables set to zero must still satisfy the system)
    let check: Vec<Rat> = (0..n)
        .map(|r| (0..k).map(|j| sol[j].clone() * basis[j][r].clone()).sum())
        .collect();
    if check == target.to_vec() {
        Some(sol)
    } else {
        None
    }
}

impl Polytope {
    pub fn from_points(points: Vec<Vec<Rat>>) -> Polytope {
        assert!(!points.is_empty());
        let dim = points[0].len();
        let mut pts = points;
        pts.sort();
        pts.dedup();
        Polytope { dim, points: pts }
    }

    /// Λ-exponent hull of a nonzero Laurent polynomial.
    pub fn newton(f: &LaurentPoly) -> Result<Polytope, Error> {
        if f.is_zero() {
            return Err(Error::Internal("Newton polytope of zero".into()));
        }
        let pts: Vec<Vec<Rat>> = f
            .terms
            .keys()
            .map(|k| k.lam.iter().map(|&a| Rat::from_integer(a.into())).collect())
            .collect();
        Ok(Polytope::from_points(pts))
    }

    /// Basis of the direction space of the affine hull.
    fn hull_basis(&self) -> Vec<Vec<Rat>> {
        let p0 = &self.points[0];
        let mut basis: Vec<Vec<Rat>> = vec![];
        for p in &self.points[1..] {
            let d = sub(p, p0);
            let mut m: Vec<Vec<Rat>> = basis.clone();
            m.push(d.clone());
            let mut mm = m.clone();
            if row_reduce(&mut mm) > basis.len() {
                basis.push(d);
            }
        }
        basis
    }

    /// Coordinates of each point in the affine hull (basis from hull_basis).
    fn hull_coords(&self, basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let p0 = &self.points[0];
        self.points
            .iter()
            .map(|p| solve_in_span(basis, &sub(p, p0)).expect("point outside own hull"))
            .collect()
    }

    /// Facet inequalities (a, b): a·x ≤ b in hull coordinates.
    fn facet_inequalities(coords: &[Vec<Rat>]) -> Vec<(Vec<Rat>, Rat)> {
        let d = coords[0].len();
        assert!(d <= 3, "hull dimension above the supported range");
        if d == 0 {
            return vec![];
        }
        let m = coords.len();
        let mut out: Vec<(Vec<Rat>, Rat)> = vec![];
        let mut subsets: Vec<Vec<usize>> = vec![];
        // all d-subsets of point indices
        fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            for i in start..m {
                cur.push(i);
                rec(i + 1, m, d, cur, out);
                cur.pop();
            }
        }
        rec(0, m, d, &mut vec![], &mut subsets);
        for s in subsets {
            // normal orthogonal to the d-1 difference vectors
            let x0 = &coords[s[0]];
            let diffs: Vec<Vec<Rat>> = s[1..].iter().map(|&i| sub(&coords[i], x0)).collect();
            // null space of diffs (rows) in R^d; need a 1-dim null space
            let mut mm = diffs.clone();
            let r = row_reduce(&mut mm);
            if r != d - 1 {
                continue;
            }
            // find a in null space: free column gets 1
            let mut a = vec![Rat::zero(); d];
            let mut pivots = vec![];
            for row in mm.iter().take(r) {
                if let Some(lead) = (0..d).find(|&c| !row[c].is_zero()) {
                    pivots.push(lead);
                }
            }
            let free = (0..d).find(|c| !pivots.contains(c)).unwrap();
            a[free] = Rat::from_integer(1.into());
            for (ri, &pc) in pivots.iter().enumerate() {
                a[pc] = -mm[ri][free].clone();
            }
            let b = dot(&a, x0);
            let side_le = coords.iter().all(|p| dot(&a, p) <= b);
            let side_ge = coords.iter().all(|p| dot(&a, p) >= b);
            if side_le {
                out.push((a.clone(), b.clone()));
            }
            if side_ge {
                let na: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
                out.push((na, -b));
            }
        }
        out
    }

    /// Does the polytope contain a point (exact)?
    pub fn contains(&self, x: &[Rat]) -> bool {
        let basis = self.hull_basis();
        let p0 = &self.points[0];
        let xc = match solve_in_span(&basis, &sub(x, p0)) {
            Some(c) => c,
            None => return false,
        };
        if basis.is_empty() {
            return xc.is_empty() && x == &p0[..];
        }
        let coords = self.hull_coords(&basis);
        for (a, b) in Self::facet_inequalities(&coords) {
            if dot(&a, &xc) > b {
                return false;
            }
        }
        true
    }

    /// conv(self) ⊆ conv(other) + shift, exactly.
    pub fn contained_in_shifted(&self, other: &Polytope, shift: &[Rat]) -> bool {
        self.points.iter().all(|p| other.contains(&sub(p, shift)))
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        let mut pts = vec![];
        for p in &self.points {
            for q in &other.points {
                pts.push(p.iter().zip(q).map(|(a, b)| a.clone() + b.clone()).collect());
            }
        }
        Polytope::from_points(pts)
    }

    pub fn same_as(&self, other: &Polytope) -> bool {
        let zero = vec![Rat::zero(); self.dim];
        self.contained_in_shifted(other, &zero) && other.contained_in_shifted(self, &zero)
    }

    /// Vertex subset: points not in the hull of the others.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        if self.points.len() == 1 {
            return self.points.clone();
        }
        self.points
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let rest: Vec<Vec<Rat>> = self
                    .points
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, q)| q.clone())
                    .collect();
                !Polytope::from_points(rest).contains(p)
            })
            .map(|(_, p)| p.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{rat, ratq};

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn point_and_segment() {
        // newton(1 - q) = {0}: q-exponent is projected away
        let one = LaurentPoly::one(1);
        let p = one.sub(&LaurentPoly::q_half(1, 2));
        let np = Polytope::newton(&p).unwrap();
        assert_eq!(np.points, vec![pt(&[0])]);
        assert!(np.contains(&pt(&[0])));
        assert!(!np.contains(&pt(&[1])));

        // newton(1 - e^α) in A1: segment [0, 2] in weight coordinates
        let seg = Polytope::newton(&one.sub(&LaurentPoly::e_weight(1, &[2]))).unwrap();
        assert!(seg.contains(&[ratq(1, 3)]));
        assert!(seg.contains(&pt(&[2])));
        assert!(!seg.contains(&[ratq(7, 3)]));
        assert!(!seg.contains(&[-ratq(1, 3)]));
    }

    #[test]
    fn degree_axiom_instance() {
        // {0} ⊆ [0, α] - tα for t ∈ (0,1), in A1 weight coordinates α = 2
        let one = LaurentPoly::one(1);
        let p = Polytope::newton(&one.sub(&LaurentPoly::q_half(1, 2))).unwrap(); // {0}
        let q = Polytope::newton(&one.sub(&LaurentPoly::e_weight(1, &[2]))).unwrap();
        for t in [ratq(1, 4), ratq(1, 2), ratq(3, 4)] {
            let shift = vec![-t * rat(2)];
            assert!(p.contained_in_shifted(&q, &shift));
        }
        assert!(!p.contained_in_shifted(&q, &[rat(1)]));
        assert!(!p.contained_in_shifted(&q, &[-rat(3)]));
    }

    #[test]
    fn triangle_2d() {
        let tri = Polytope::from_points(vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2])]);
        assert!(tri.contains(&[ratq(1, 2), ratq(1, 2)]));
        assert!(tri.contains(&pt(&[1, 1]))); // boundary
        assert!(!tri.contains(&[ratq(3, 2), rat(1)]));
        assert!(!tri.contains(&pt(&[-1, 0])));
        let v = tri.vertices();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn lower_dimensional_in_higher_space() {
        // a segment living in the plane
        let seg = Polytope::from_points(vec![pt(&[0, 0]), pt(&[2, 2])]);
        assert!(seg.contains(&pt(&[1, 1])));
        assert!(!seg.contains(&pt(&[1, 0])));
        assert!(!seg.contains(&pt(&[3, 3])));
    }

    #[test]
    fn minkowski_matches_product() {
        let one = LaurentPoly::one(2);
        let f = one.sub(&LaurentPoly::e_weight(2, &[2, -1]));
        let g = one.add(&LaurentPoly::e_weight(2, &[-1, 2])).add(&LaurentPoly::e_weight(2, &[1, 1]));
        let nf = Polytope::newton(&f).unwrap();
        let ng = Polytope::newton(&g).unwrap();
        let nfg = Polytope::newton(&f.mul(&g)).unwrap();
        assert!(nfg.same_as(&nf.minkowski_sum(&ng)));
    }
}
