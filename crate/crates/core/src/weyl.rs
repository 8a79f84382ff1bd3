//! Finite root systems, Weyl groups, Bruhat order and alcove bookkeeping.
//!
//! Weights are stored as exact-rational coordinate vectors in the
//! fundamental-weight basis, so that `⟨λ, α_i^∨⟩` is simply the i-th
//! coordinate. Roots additionally carry simple-root coordinates for display
//! and for building characters.

use std::collections::HashMap;

use num::{BigRational, One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Index of a Weyl group element inside its `RootSystem`.
pub type WIdx = usize;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// One Weyl group element: its action matrix on the weight lattice in
/// fundamental-weight coordinates, its length, and the lexicographically
/// smallest reduced word (empty for the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElt {
    pub mat: Vec<Vec<i64>>,
    pub length: usize,
    pub word: Vec<usize>,
}

/// An alcove of the (unshifted) affine coroot arrangement, encoded as
/// `x·∇₊ + μ` with `x` a finite Weyl element and `μ` in the root lattice
/// (simple-root coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlcoveSpec {
    pub x: WIdx,
    pub mu: Vec<i64>,
}

impl AlcoveSpec {
    pub fn fundamental(rank: usize) -> Self {
        AlcoveSpec { x: 0, mu: vec![0; rank] }
    }
}

#[derive(Debug)]
pub struct RootSystem {
    pub label: char,
    pub rank: usize,
    /// cartan[i][j] = ⟨α_j, α_i^∨⟩
    pub cartan: Vec<Vec<i64>>,
    /// Symmetrizer: d[i] = (α_i, α_i)/2, normalized so min d = 1.
    pub d: Vec<Rat>,
    /// Positive roots, simple-root coordinates (integer entries).
    pub positive_roots: Vec<Vec<Rat>>,
    /// Positive coroots β^∨ in simple-coroot coordinates.
    pub coroots: Vec<Vec<Rat>>,
    /// positive_roots[simple_pos[i]] == α_i.
    simple_pos: Vec<usize>,
    /// ρ in fundamental-weight coordinates (all ones).
    pub rho: Vec<Rat>,

    elts: Vec<WeylElt>,
    mult_tab: Vec<Vec<WIdx>>,
    inv_tab: Vec<WIdx>,
    w0: WIdx,
    /// bruhat[w] is the set {u : u ≤ w}, computed by the subword DP.
    bruhat: Vec<Vec<bool>>,
    /// Element index of the reflection s_β for each positive root.
    pub reflections: Vec<WIdx>,
    /// Barycenter of ∇₊ in fundamental-weight coordinates.
    barycenter: Vec<Rat>,
}

fn cartan_matrix(label: char, rank: usize) -> Result<Vec<Vec<i64>>, Error> {
    let n = rank;
    let bad = || Error::InvalidType(label, rank);
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 1..upto {
            c[i - 1][i] = -1;
            c[i][i - 1] = -1;
        }
    };
    match label {
        'A' => {
            if n < 1 {
                return Err(bad());
            }
            chain(&mut c, n);
        }
        'B' => {
            // α_{n-1} short
            if n < 2 {
                return Err(bad());
            }
            chain(&mut c, n);
            c[n - 1][n - 2] = -2;
        }
        'C' => {
            // α_{n-1} long
            if n < 2 {
                return Err(bad());
            }
            chain(&mut c, n);
            c[n - 2][n - 1] = -2;
        }
        'D' => {
            if n < 3 {
                return Err(bad());
            }
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        'E' => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            // Bourbaki: node 2 (index 1) hangs off node 4 (index 3).
            c[0][2] = -1;
            c[2][0] = -1;
            c[1][3] = -1;
            c[3][1] = -1;
            for i in 3..n {
                c[i - 1][i] = -1;
                c[i][i - 1] = -1;
            }
            // fix up: the chain is 0-2-3-4-..., clear the spurious 1-2 link
            c[1][2] = 0;
            c[2][1] = 0;
            c[2][3] = -1;
            c[3][2] = -1;
        }
        'F' => {
            if n != 4 {
                return Err(bad());
            }
            chain(&mut c, 4);
            c[2][1] = -2;
        }
        'G' => {
            if n != 2 {
                return Err(bad());
            }
            c[0][1] = -1;
            c[1][0] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(c)
}

fn expected_pos_root_count(label: char, n: usize) -> usize {
    match label {
        'A' => n * (n + 1) / 2,
        'B' | 'C' => n * n,
        'D' => n * (n - 1),
        'E' => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        'F' => 24,
        _ => 6, // G2
    }
}

impl RootSystem {
    pub fn build(label: char, rank: usize) -> Result<RootSystem, Error> {
        let cartan = cartan_matrix(label, rank)?;
        let n = rank;

        // symmetrizer: d[i]*cartan[i][j] symmetric
        let mut d: Vec<Option<Rat>> = vec![None; n];
        d[0] = Some(Rat::one());
        loop {
            let mut progressed = false;
            for i in 0..n {
                for j in 0..n {
                    if i != j && cartan[i][j] != 0 {
                        if let Some(di) = d[i].clone() {
                            let dj = di * rat(cartan[i][j]) / rat(cartan[j][i]);
                            match &d[j] {
                                None => {
                                    d[j] = Some(dj);
                                    progressed = true;
                                }
                                Some(old) => assert_eq!(*old, dj, "non-symmetrizable Cartan matrix"),
                            }
                        }
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let mut d: Vec<Rat> = d.into_iter().map(|x| x.expect("disconnected diagram")).collect();
        let dmin = d.iter().cloned().fold(None::<Rat>, |m, x| match m {
            None => Some(x),
            Some(m) => Some(if x < m { x } else { m }),
        })
        .unwrap();
        for di in &mut d {
            *di /= dmin.clone();
        }

        // positive roots by closure under simple reflections, simple-root coords
        let simple_alpha: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        let refl_alpha = |i: usize, v: &[Rat]| -> Vec<Rat> {
            // s_i in simple-root coordinates: v - <λ_v, α_i^∨> e_i where for a
            // root written as Σ v_j α_j, <·, α_i^∨> = Σ_j v_j cartan[i][j]
            let pairing: Rat = (0..n).map(|j| v[j].clone() * rat(cartan[i][j])).sum();
            let mut out = v.to_vec();
            out[i] = out[i].clone() - pairing;
            out
        };
        let mut pos: Vec<Vec<Rat>> = simple_alpha.clone();
        let mut seen: std::collections::HashSet<Vec<Rat>> = pos.iter().cloned().collect();
        let mut queue: Vec<Vec<Rat>> = pos.clone();
        while let Some(v) = queue.pop() {
            for i in 0..n {
                let w = refl_alpha(i, &v);
                if w.iter().all(|c| !c.is_negative()) && !seen.contains(&w) {
                    seen.insert(w.clone());
                    pos.push(w.clone());
                    queue.push(w);
                }
            }
        }
        // sort by height then lex
        pos.sort_by(|a, b| {
            let ha: Rat = a.iter().cloned().sum();
            let hb: Rat = b.iter().cloned().sum();
            ha.cmp(&hb).then(a.cmp(b))
        });
        if pos.len() != expected_pos_root_count(label, n) {
            return Err(Error::Internal(format!(
                "positive root count {} does not match table for {}{}",
                pos.len(),
                label,
                n
            )));
        }
        let simple_pos: Vec<usize> = (0..n)
            .map(|i| pos.iter().position(|v| *v == simple_alpha[i]).unwrap())
            .collect();

        // coroots: β^∨ = Σ_j b_j d_j / ((β,β)/2) α_j^∨
        let half_norm = |b: &[Rat]| -> Rat {
            let mut s = Rat::zero();
            for j in 0..n {
                for k in 0..n {
                    s += b[j].clone() * b[k].clone() * d[j].clone() * rat(cartan[j][k]);
                }
            }
            s / rat(2)
        };
        let coroots: Vec<Vec<Rat>> = pos
            .iter()
            .map(|b| {
                let hn = half_norm(b);
                (0..n).map(|j| b[j].clone() * d[j].clone() / hn.clone()).collect()
            })
            .collect();

        // Weyl group enumeration, matrices on fundamental-weight coordinates.
        // s_i(λ)_k = λ_k - λ_i * C[k][i]
        let gen_mat = |i: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            for k in 0..n {
                m[k][k] = 1;
                m[k][i] -= cartan[k][i];
            }
            m
        };
        let matmul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            for r in 0..n {
                for c2 in 0..n {
                    m[r][c2] = (0..n).map(|k| a[r][k] * b[k][c2]).sum();
                }
            }
            m
        };
        let flat = |m: &Vec<Vec<i64>>| -> Vec<i64> { m.iter().flatten().cloned().collect() };
        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(gen_mat).collect();
        let id: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c2| if r == c2 { 1 } else { 0 }).collect())
            .collect();

        let mut elts = vec![WeylElt { mat: id.clone(), length: 0, word: vec![] }];
        let mut index: HashMap<Vec<i64>, WIdx> = HashMap::new();
        index.insert(flat(&id), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = vec![];
            for &p in &frontier {
                let pword = elts[p].word.clone();
                let pmat = elts[p].mat.clone();
                let plen = elts[p].length;
                for i in 0..n {
                    // right multiplication: (w s_i)(λ) = w(s_i(λ))
                    let m = matmul(&pmat, &gens[i]);
                    let key = flat(&m);
                    if !index.contains_key(&key) {
                        let mut word = pword.clone();
                        word.push(i);
                        index.insert(key, elts.len());
                        next.push(elts.len());
                        elts.push(WeylElt { mat: m, length: plen + 1, word });
                    }
                }
            }
            frontier = next;
        }
        let order = elts.len();
        let mut mult_tab = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                mult_tab[a][b] = index[&flat(&matmul(&elts[a].mat, &elts[b].mat))];
            }
        }
        let inv_tab: Vec<WIdx> = (0..order)
            .map(|a| (0..order).find(|&b| mult_tab[a][b] == 0).unwrap())
            .collect();
        let w0 = (0..order).max_by_key(|&a| elts[a].length).unwrap();

        // reflections s_β
        let root_to_weight = |b: &[Rat]| -> Vec<Rat> {
            (0..n)
                .map(|k| (0..n).map(|j| rat(cartan[k][j]) * b[j].clone()).sum())
                .collect()
        };
        let reflections: Vec<WIdx> = pos
            .iter()
            .zip(coroots.iter())
            .map(|(b, bv)| {
                // s_β(λ)_k = λ_k - ⟨λ, β^∨⟩ (β_ω)_k ; ⟨λ, β^∨⟩ = Σ_j bv_j λ_j
                let bw = root_to_weight(b);
                let mut m = vec![vec![Rat::zero(); n]; n];
                for k in 0..n {
                    for j in 0..n {
                        if k == j {
                            m[k][j] += Rat::one();
                        }
                        m[k][j] -= bw[k].clone() * bv[j].clone();
                    }
                }
                let mi: Vec<i64> = m
                    .iter()
                    .flatten()
                    .map(|x| {
                        assert!(x.is_integer(), "reflection matrix not integral");
                        i64::try_from(x.to_integer()).unwrap()
                    })
                    .collect();
                index[&mi]
            })
            .collect();

        // Bruhat order DP per element
        let mut bruhat = vec![vec![false; order]; order];
        for w in 0..order {
            let mut below = vec![false; order];
            below[0] = true;
            for &i in &elts[w].word.clone() {
                let mut nxt = below.clone();
                for v in 0..order {
                    if below[v] {
                        let vs = mult_tab[v][index[&flat(&gens[i])]];
                        if elts[vs].length > elts[v].length {
                            nxt[vs] = true;
                        }
                    }
                }
                below = nxt;
            }
            bruhat[w] = below;
        }

        // barycenter of ∇₊: (0 + Σ_i ω_i / c_i)/(rank+1), c = highest coroot coords
        let theta_v = coroots
            .iter()
            .max_by_key(|cv| {
                let h: Rat = cv.iter().cloned().sum();
                h
            })
            .unwrap()
            .clone();
        let barycenter: Vec<Rat> = (0..n)
            .map(|i| Rat::one() / theta_v[i].clone() / rat(n as i64 + 1))
            .collect();

        let rs = RootSystem {
            label,
            rank,
            cartan,
            d,
            positive_roots: pos,
            coroots,
            simple_pos,
            rho: vec![Rat::one(); n],
            elts,
            mult_tab,
            inv_tab,
            w0,
            bruhat,
            reflections,
            barycenter,
        };
        // sanity: barycenter interior to ∇₊, ρ = half-sum of positive roots
        for cv in &rs.coroots {
            let p = rs.coroot_pairing_weight(cv, &rs.barycenter);
            assert!(p > Rat::zero() && p < Rat::one(), "barycenter not interior");
        }
        let mut half_sum = vec![Rat::zero(); n];
        for b in &rs.positive_roots {
            let bw = rs.alpha_to_weight(b);
            for k in 0..n {
                half_sum[k] += bw[k].clone() / rat(2);
            }
        }
        assert_eq!(half_sum, rs.rho, "ρ is not half the sum of positive roots");
        Ok(rs)
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    pub fn elt(&self, w: WIdx) -> &WeylElt {
        &self.elts[w]
    }

    pub fn len(&self, w: WIdx) -> usize {
        self.elts[w].length
    }

    pub fn word(&self, w: WIdx) -> &[usize] {
        &self.elts[w].word
    }

    pub fn mul(&self, a: WIdx, b: WIdx) -> WIdx {
        self.mult_tab[a][b]
    }

    pub fn inv(&self, a: WIdx) -> WIdx {
        self.inv_tab[a]
    }

    pub fn w0(&self) -> WIdx {
        self.w0
    }

    pub fn id(&self) -> WIdx {
        0
    }

    pub fn simple(&self, i: usize) -> WIdx {
        self.reflections[self.simple_pos[i]]
    }

    /// α_i as a simple-root coordinate vector.
    pub fn simple_root(&self, i: usize) -> Vec<Rat> {
        self.positive_roots[self.simple_pos[i]].clone()
    }

    pub fn num_pos_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Product of an explicit word in the simple generators.
    pub fn from_word(&self, word: &[usize]) -> Result<WIdx, Error> {
        let mut w = 0;
        for &i in word {
            if i >= self.rank {
                return Err(Error::Parse(format!("generator index {} out of range", i + 1)));
            }
            w = self.mul(w, self.simple(i));
        }
        Ok(w)
    }

    /// Serialize as "s1.s2.s1" (canonical reduced word), identity as "e".
    pub fn word_string(&self, w: WIdx) -> String {
        if w == 0 {
            return "e".to_string();
        }
        self.elts[w]
            .word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn parse_word(&self, s: &str) -> Result<WIdx, Error> {
        let s = s.trim();
        if s == "e" {
            return Ok(0);
        }
        let mut word = vec![];
        for part in s.split('.') {
            let part = part.trim();
            let num = part
                .strip_prefix('s')
                .ok_or_else(|| Error::Parse(format!("bad word component {:?}", part)))?;
            let i: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad word component {:?}", part)))?;
            if i == 0 || i > self.rank {
                return Err(Error::Parse(format!("generator s{} out of range", i)));
            }
            word.push(i - 1);
        }
        self.from_word(&word)
    }

    /// Parse "x;m1,...,mr" (reduced word; integer simple-root shift).  A
    /// single shift coordinate is broadcast to the whole rank.
    pub fn parse_alcove(&self, s: &str) -> Result<AlcoveSpec, Error> {
        let (xs, mus) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("alcove {:?} must be \"x;m1,...,mr\"", s)))?;
        let x = self.parse_word(xs)?;
        let mut mu: Vec<i64> = mus
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad alcove shift {:?}", p)))
            })
            .collect::<Result<_, _>>()?;
        if mu.len() == 1 && self.rank > 1 {
            mu = vec![mu[0]; self.rank];
        }
        if mu.len() != self.rank {
            return Err(Error::Parse(format!(
                "alcove shift needs {} coordinates",
                self.rank
            )));
        }
        Ok(AlcoveSpec { x, mu })
    }

    /// Parse a chamber string "w+" / "w-" (reduced word, trailing sign)
    /// into the Weyl element w resp. w·w₀.
    pub fn parse_chamber(&self, s: &str) -> Result<WIdx, Error> {
        let s = s.trim();
        let (word, neg) = match s.strip_suffix('+') {
            Some(rest) => (rest, false),
            None => match s.strip_suffix('-') {
                Some(rest) => (rest, true),
                None => {
                    return Err(Error::Parse(format!(
                        "chamber {:?} must end in '+' or '-'",
                        s
                    )))
                }
            },
        };
        let w = self.parse_word(word)?;
        Ok(if neg { self.mul(w, self.w0()) } else { w })
    }

    pub fn bruhat_leq(&self, u: WIdx, w: WIdx) -> bool {
        self.bruhat[w][u]
    }

    /// Order on fixed points induced by the chamber c·𝔠₊.
    pub fn chamber_leq(&self, chamber: WIdx, v: WIdx, w: WIdx) -> bool {
        let ci = self.inv(chamber);
        self.bruhat_leq(self.mul(ci, v), self.mul(ci, w))
    }

    /// w acting on a weight in fundamental-weight coordinates.
    pub fn act_weight(&self, w: WIdx, lam: &[Rat]) -> Vec<Rat> {
        let m = &self.elts[w].mat;
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| rat(m[r][c]) * lam[c].clone()).sum())
            .collect()
    }

    /// Same, for integer exponent vectors.
    pub fn act_weight_i(&self, w: WIdx, lam: &[i64]) -> Vec<i64> {
        let m = &self.elts[w].mat;
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| m[r][c] * lam[c]).sum())
            .collect()
    }

    /// w acting on simple-root coordinates.
    pub fn act_alpha(&self, w: WIdx, v: &[Rat]) -> Vec<Rat> {
        let lam = self.alpha_to_weight(v);
        let out = self.act_weight(w, &lam);
        self.weight_to_alpha(&out)
    }

    /// Convert simple-root coordinates to fundamental-weight coordinates.
    pub fn alpha_to_weight(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| rat(self.cartan[k][j]) * v[j].clone()).sum())
            .collect()
    }

    /// Convert fundamental-weight coordinates to simple-root coordinates.
    pub fn weight_to_alpha(&self, lam: &[Rat]) -> Vec<Rat> {
        // solve C x = lam by Gaussian elimination (rank ≤ 8)
        let n = self.rank;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rat> = (0..n).map(|c| rat(self.cartan[r][c])).collect();
                row.push(lam[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Cartan matrix");
            a.swap(col, piv);
            let p = a[col][col].clone();
            for c in col..=n {
                a[col][c] = a[col][c].clone() / p.clone();
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                    }
                }
            }
        }
        (0..n).map(|r| a[r][n].clone()).collect()
    }

    fn coroot_pairing_weight(&self, coroot: &[Rat], lam: &[Rat]) -> Rat {
        (0..self.rank).map(|j| coroot[j].clone() * lam[j].clone()).sum()
    }

    /// ⟨λ, β^∨⟩ for the a-th positive coroot, λ in fundamental-weight coords.
    pub fn pairing(&self, lam: &[Rat], root_idx: usize) -> Rat {
        self.coroot_pairing_weight(&self.coroots[root_idx], lam)
    }

    /// The inversion set {a : w(β_a) < 0} as indices into positive_roots.
    pub fn inversions(&self, w: WIdx) -> Vec<usize> {
        (0..self.positive_roots.len())
            .filter(|&a| {
                let img = self.act_alpha(w, &self.positive_roots[a]);
                img.iter().any(|c| c.is_negative())
            })
            .collect()
    }

    /// Interior point of an alcove, in fundamental-weight coordinates.
    pub fn alcove_interior_point(&self, alc: &AlcoveSpec) -> Vec<Rat> {
        let mut p = self.act_weight(alc.x, &self.barycenter);
        let mu_alpha: Vec<Rat> = alc.mu.iter().map(|&m| rat(m)).collect();
        let mu_w = self.alpha_to_weight(&mu_alpha);
        for k in 0..self.rank {
            p[k] += mu_w[k].clone();
        }
        p
    }

    /// Barycenter of the alcove as a weight vector (same as interior point).
    pub fn alcove_barycenter(&self, alc: &AlcoveSpec) -> Vec<Rat> {
        self.alcove_interior_point(alc)
    }

    /// Locate the alcove containing a point (fundamental-weight coordinates).
    pub fn decompose_alcove(&self, point: &[Rat]) -> Result<AlcoveSpec, Error> {
        let n = self.rank;
        let mut p = point.to_vec();
        // affine map g with g(point) ∈ ∇₊, tracked as p = w(point) + t
        let mut w: WIdx = 0;
        let mut t = vec![Rat::zero(); n]; // weight coords, lies in root lattice
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::Internal("alcove reduction did not terminate".into()));
            }
            let mut acted = false;
            for a in 0..self.coroots.len() {
                let val = self.pairing(&p, a);
                if val.is_integer() {
                    return Err(Error::WallPoint);
                }
                let refl = self.reflections[a];
                if val < Rat::zero() {
                    p = self.act_weight(refl, &p);
                    w = self.mul(refl, w);
                    t = self.act_weight(refl, &t);
                    acted = true;
                    break;
                } else if val > Rat::one() {
                    // s_{β,1}: x ↦ s_β(x) + β
                    let beta_w = self.alpha_to_weight(&self.positive_roots[a]);
                    p = self.act_weight(refl, &p);
                    t = self.act_weight(refl, &t);
                    for k in 0..n {
                        p[k] += beta_w[k].clone();
                        t[k] += beta_w[k].clone();
                    }
                    w = self.mul(refl, w);
                    acted = true;
                    break;
                }
            }
            if !acted {
                break;
            }
        }
        // alcove = g^{-1}∇₊ = w^{-1}∇₊ - w^{-1}(t)
        let x = self.inv(w);
        let mt = self.act_weight(x, &t);
        let mu_alpha = self.weight_to_alpha(&mt.iter().map(|v| -v.clone()).collect::<Vec<_>>());
        let mu: Vec<i64> = mu_alpha
            .iter()
            .map(|v| {
                assert!(v.is_integer(), "alcove translation not in the root lattice");
                i64::try_from(v.to_integer()).unwrap()
            })
            .collect();
        Ok(AlcoveSpec { x, mu })
    }

    /// Deodhar-style reflection count: is the opposite Schubert variety Y(u)
    /// rationally smooth at the fixed point e_w?  Requires u ≤ w.
    pub fn rationally_smooth_at(&self, u: WIdx, w: WIdx) -> Result<bool, Error> {
        if !self.bruhat_leq(u, w) {
            return Err(Error::NotComparable);
        }
        let lower = self.mul(self.w0, w);
        let upper = self.mul(self.w0, u);
        let mut count = 0usize;
        for &t in &self.reflections {
            let tl = self.mul(t, lower);
            if self.len(tl) > self.len(lower) && self.bruhat_leq(tl, upper) {
                count += 1;
            }
        }
        Ok(count == self.len(w) - self.len(u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::build('A', 2).unwrap()
    }

    #[test]
    fn build_small_types() {
        let a1 = RootSystem::build('A', 1).unwrap();
        assert_eq!(a1.num_pos_roots(), 1);
        assert_eq!(a1.order(), 2);

        let rs = a2();
        assert_eq!(rs.num_pos_roots(), 3);
        assert_eq!(rs.order(), 6);

        let g2 = RootSystem::build('G', 2).unwrap();
        assert_eq!(g2.num_pos_roots(), 6);
        assert_eq!(g2.order(), 12);
        assert_eq!(g2.cartan[0][1] * g2.cartan[1][0], 3);

        let b2 = RootSystem::build('B', 2).unwrap();
        assert_eq!(b2.num_pos_roots(), 4);
        assert_eq!(b2.order(), 8);

        assert!(RootSystem::build('A', 0).is_err());
        assert!(RootSystem::build('G', 3).is_err());
        assert!(RootSystem::build('H', 2).is_err());
    }

    #[test]
    fn cartan_pairing_reproduced() {
        for (l, n) in [('A', 3), ('B', 3), ('C', 3), ('G', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            for i in 0..n {
                let ai = rs.simple_root(i);
                let lam = rs.alpha_to_weight(&ai);
                for j in 0..n {
                    assert_eq!(rs.pairing(&lam, rs.simple_pos[j]), rat(rs.cartan[j][i]));
                }
            }
        }
    }

    #[test]
    fn lengths_and_w0() {
        let rs = a2();
        let w0 = rs.w0();
        assert_eq!(rs.len(w0), 3);
        for w in 0..rs.order() {
            assert_eq!(rs.len(rs.mul(w0, w)), rs.len(w0) - rs.len(w));
            // length equals inversion count
            assert_eq!(rs.inversions(w).len(), rs.len(w));
            // stored word multiplies back to the element
            assert_eq!(rs.from_word(rs.word(w)).unwrap(), w);
        }
    }

    #[test]
    fn bruhat_small_cases() {
        let rs = a2();
        let s1 = rs.simple(0);
        let s2 = rs.simple(1);
        let s1s2 = rs.mul(s1, s2);
        let s2s1 = rs.mul(s2, s1);
        let s1s2s1 = rs.mul(s1s2, s1);
        for w in 0..rs.order() {
            assert!(rs.bruhat_leq(0, w));
        }
        assert!(!rs.bruhat_leq(s1s2, s2s1));
        assert!(!rs.bruhat_leq(s2s1, s1s2));
        assert!(rs.bruhat_leq(s1, s1s2s1));
        assert!(rs.bruhat_leq(s2, s1s2s1));
    }

    #[test]
    fn bruhat_agrees_with_reflection_chains() {
        for (l, n) in [('A', 3), ('B', 3), ('G', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            let order = rs.order();
            // covering-chain closure
            let mut leq = vec![vec![false; order]; order];
            for u in 0..order {
                leq[u][u] = true;
            }
            // by length: u ≤ w iff u = w or u ≤ t·w for some t·w < w
            let mut by_len: Vec<WIdx> = (0..order).collect();
            by_len.sort_by_key(|&w| rs.len(w));
            for &w in &by_len {
                for &t in &rs.reflections {
                    let tw = rs.mul(t, w);
                    if rs.len(tw) < rs.len(w) {
                        for u in 0..order {
                            if leq[u][tw] {
                                leq[u][w] = true;
                            }
                        }
                    }
                }
            }
            for u in 0..order {
                for w in 0..order {
                    assert_eq!(rs.bruhat_leq(u, w), leq[u][w], "{} {}", u, w);
                }
            }
        }
    }

    #[test]
    fn exchange_property() {
        let rs = RootSystem::build('B', 2).unwrap();
        for w in 0..rs.order() {
            let word = rs.word(w).to_vec();
            for i in 0..rs.rank {
                let wsi = rs.mul(w, rs.simple(i));
                if rs.len(wsi) < rs.len(w) {
                    let mut extended = word.clone();
                    extended.push(i);
                    // some single deletion of `word` yields a reduced word of ws_i
                    let found = (0..word.len()).any(|k| {
                        let sub: Vec<usize> = word
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| *p != k)
                            .map(|(_, &x)| x)
                            .collect();
                        rs.from_word(&sub).unwrap() == wsi
                    });
                    assert!(found);
                }
            }
        }
    }

    #[test]
    fn alcove_roundtrip() {
        let a1 = RootSystem::build('A', 1).unwrap();
        let b = a1.alcove_interior_point(&AlcoveSpec::fundamental(1));
        assert_eq!(a1.decompose_alcove(&b).unwrap(), AlcoveSpec::fundamental(1));
        let neg: Vec<Rat> = b.iter().map(|v| -v.clone()).collect();
        let alc = a1.decompose_alcove(&neg).unwrap();
        assert_eq!(alc, AlcoveSpec { x: a1.w0(), mu: vec![0] });

        let rs = a2();
        let mut p = rs.alcove_interior_point(&AlcoveSpec::fundamental(2));
        let alpha1 = rs.alpha_to_weight(&rs.simple_root(0));
        for k in 0..2 {
            p[k] += alpha1[k].clone();
        }
        assert_eq!(rs.decompose_alcove(&p).unwrap(), AlcoveSpec { x: 0, mu: vec![1, 0] });
    }

    #[test]
    fn alcove_roundtrip_many() {
        for (l, n) in [('A', 2), ('B', 2), ('G', 2)] {
            let rs = RootSystem::build(l, n).unwrap();
            for x in 0..rs.order() {
                for mu in [vec![0, 0], vec![1, 0], vec![-1, 2], vec![2, -1]] {
                    let alc = AlcoveSpec { x, mu };
                    let p = rs.alcove_interior_point(&alc);
                    assert_eq!(rs.decompose_alcove(&p).unwrap(), alc);
                }
            }
        }
    }

    #[test]
    fn wall_point_rejected() {
        let a1 = RootSystem::build('A', 1).unwrap();
        assert!(matches!(a1.decompose_alcove(&[Rat::zero()]), Err(Error::WallPoint)));
    }

    #[test]
    fn smoothness_trivial_cases() {
        let rs = a2();
        for w in 0..rs.order() {
            assert!(rs.rationally_smooth_at(w, w).unwrap());
        }
        assert!(rs.rationally_smooth_at(0, rs.w0()).unwrap());
        assert!(matches!(
            rs.rationally_smooth_at(rs.w0(), 0),
            Err(Error::NotComparable)
        ));
    }

    #[test]
    fn smoothness_a3_matches_pattern_avoidance() {
        // Y(u) is smooth everywhere iff w0·u (as a permutation) avoids 3412
        // and 4231; cross-check the reflection-count verdicts against that.
        let rs = RootSystem::build('A', 3).unwrap();
        // build permutation of {1..4} for each element: w acting on e_i basis;
        // use action on the weight lattice to recover one-line notation via
        // the standard embedding is overkill -- instead read off from words.
        let perm_of = |rs: &RootSystem, w: WIdx| -> Vec<usize> {
            let mut p: Vec<usize> = (1..=4).collect();
            for &i in rs.word(w) {
                p.swap(i, i + 1);
            }
            p
        };
        let avoids = |p: &[usize]| -> bool {
            let n = p.len();
            let mut ok = true;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d2 in c + 1..n {
                            let q = [p[a], p[b], p[c], p[d2]];
                            let pat = |x: [usize; 4]| {
                                let mut idx: Vec<usize> = (0..4).collect();
                                idx.sort_by_key(|&k| x[k]);
                                let mut r = [0usize; 4];
                                for (rank, &k) in idx.iter().enumerate() {
                                    r[k] = rank + 1;
                                }
                                r
                            };
                            let r = pat(q);
                            if r == [3, 4, 1, 2] || r == [4, 2, 3, 1] {
                                ok = false;
                            }
                        }
                    }
                }
            }
            ok
        };
        let mut found_singular = false;
        for u in 0..rs.order() {
            let xv = rs.mul(rs.w0(), u); // Y(u) = w0·X(w0 u) so X-side element is w0·u
            let smooth_everywhere = (0..rs.order())
                .filter(|&w| rs.bruhat_leq(u, w))
                .all(|w| rs.rationally_smooth_at(u, w).unwrap());
            assert_eq!(smooth_everywhere, avoids(&perm_of(&rs, xv)), "u={}", u);
            if !smooth_everywhere {
                found_singular = true;
            }
        }
        assert!(found_singular);
    }

    #[test]
    fn word_serialization_roundtrip() {
        let rs = a2();
        for w in 0..rs.order() {
            let s = rs.word_string(w);
            assert_eq!(rs.parse_word(&s).unwrap(), w);
        }
        assert_eq!(rs.word_string(0), "e");
        assert!(rs.parse_word("s9").is_err());
        assert!(rs.parse_word("x1").is_err());
    }
}
