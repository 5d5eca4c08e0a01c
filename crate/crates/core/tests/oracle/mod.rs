//! Brute-force reference computations used to cross-check the library.
//!
//! Everything here works on dense arrays indexed by all basis tuples and uses
//! its own Gaussian elimination, so it shares no code path with the sparse,
//! admissible-tuple machinery under test.
#![allow(dead_code)]

use colorlie::grading::GroupElement;
use colorlie::{ColorLieAlgebra, Scalar};

/// Rank by plain row reduction.
pub fn naive_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Basis of `{ x : A x = 0 }` for `A` given by rows over `cols` unknowns.
pub fn naive_nullspace(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rows[rank] = pivot;
        pivots.push(c);
        rank += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][free];
        }
        out.push(v);
    }
    out
}

/// Dense structure constants `c[i][j][k]` with the bicharacter on basis pairs.
#[derive(Clone)]
pub struct DenseAlgebra {
    pub n: usize,
    pub eps: Vec<Vec<Scalar>>,
    pub degrees: Vec<GroupElement>,
    pub c: Vec<Vec<Vec<Scalar>>>,
}

impl DenseAlgebra {
    pub fn of(alg: &ColorLieAlgebra) -> Self {
        let n = alg.dim();
        DenseAlgebra {
            n,
            eps: (0..n).map(|i| (0..n).map(|j| alg.eps(i, j).clone()).collect()).collect(),
            degrees: (0..n).map(|i| alg.degree(i).clone()).collect(),
            c: (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| alg.structure_constant(i, j, k)).collect()).collect()).collect(),
        }
    }

    /// Grading, antisymmetry (diagonal included) and Jacobi on all ordered triples.
    pub fn is_color_lie(&self, alg: &ColorLieAlgebra) -> bool {
        let n = self.n;
        let g = alg.group();
        for i in 0..n {
            for j in 0..n {
                let target = g.compose(&self.degrees[i], &self.degrees[j]).unwrap();
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() && self.degrees[k] != target {
                        return false;
                    }
                    if !(&self.c[i][j][k] + &(&self.eps[i][j] * &self.c[j][i][k])).is_zero() {
                        return false;
                    }
                }
            }
        }
        // [a,[b,c]] = Σ_m c_bc^m c_am^l
        let nested = |a: usize, b: usize, c: usize, l: usize| -> Scalar {
            (0..n).fold(Scalar::zero(), |acc, m| &acc + &(&self.c[b][c][m] * &self.c[a][m][l]))
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for l in 0..n {
                        let s = &(&(&self.eps[c][a] * &nested(a, b, c, l)) + &(&self.eps[a][b] * &nested(b, c, a, l)))
                            + &(&self.eps[b][c] * &nested(c, a, b, l));
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseModule {
    Adjoint,
    Trivial,
}

struct CochainSpace {
    // (tuple, module index) coordinates of degree γ
    coords: Vec<(Vec<usize>, usize)>,
}

impl CochainSpace {
    fn index(&self, t: &[usize], m: usize) -> Option<usize> {
        self.coords.iter().position(|(s, k)| s == t && *k == m)
    }
}

fn all_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..d).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Chevalley–Eilenberg cochains on all `n`-tuples computed without any skew reduction.
pub struct DenseComplex<'a> {
    alg: &'a ColorLieAlgebra,
    dense: DenseAlgebra,
    module: DenseModule,
    gamma: GroupElement,
}

impl<'a> DenseComplex<'a> {
    pub fn new(alg: &'a ColorLieAlgebra, module: DenseModule, gamma: GroupElement) -> Self {
        DenseComplex { alg, dense: DenseAlgebra::of(alg), module, gamma }
    }

    fn module_dim(&self) -> usize {
        match self.module {
            DenseModule::Adjoint => self.dense.n,
            DenseModule::Trivial => 1,
        }
    }

    fn module_degree(&self, m: usize) -> GroupElement {
        match self.module {
            DenseModule::Adjoint => self.dense.degrees[m].clone(),
            DenseModule::Trivial => self.alg.group().identity(),
        }
    }

    fn act(&self, i: usize, m: usize, l: usize) -> Scalar {
        match self.module {
            DenseModule::Adjoint => self.dense.c[i][m][l].clone(),
            DenseModule::Trivial => Scalar::zero(),
        }
    }

    fn space(&self, n: usize) -> CochainSpace {
        let g = self.alg.group();
        let mut coords = Vec::new();
        for t in all_tuples(self.dense.n, n) {
            let arg = g.sum(t.iter().map(|&i| &self.dense.degrees[i]));
            let want = g.compose(&self.gamma, &arg).unwrap();
            for m in 0..self.module_dim() {
                if self.module_degree(m) == want {
                    coords.push((t.clone(), m));
                }
            }
        }
        CochainSpace { coords }
    }

    /// Basis of the ε-alternating cochains inside the full tuple space.
    fn cochain_basis(&self, space: &CochainSpace, n: usize) -> Vec<Vec<Scalar>> {
        let dim = space.coords.len();
        let mut rows = Vec::new();
        for (t, m) in &space.coords {
            for p in 0..n.saturating_sub(1) {
                let mut s = t.clone();
                s.swap(p, p + 1);
                let mut row = vec![Scalar::zero(); dim];
                let a = space.index(t, *m).unwrap();
                row[a] = &row[a] + &Scalar::one();
                let b = space.index(&s, *m).unwrap();
                row[b] = &row[b] + &self.dense.eps[t[p]][t[p + 1]];
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return (0..dim)
                .map(|k| {
                    let mut v = vec![Scalar::zero(); dim];
                    v[k] = Scalar::one();
                    v
                })
                .collect();
        }
        naive_nullspace(rows, dim)
    }

    fn delta(&self, from: &CochainSpace, to: &CochainSpace, f: &[Scalar]) -> Vec<Scalar> {
        let d = &self.dense;
        let val = |t: &[usize], m: usize| from.index(t, m).map_or(Scalar::zero(), |k| f[k].clone());
        let mut out = Vec::with_capacity(to.coords.len());
        for (s, l) in &to.coords {
            let mut acc = Scalar::zero();
            let len = s.len();
            for i in 0..len {
                let mut sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                for k in 0..i {
                    sign = &sign * &d.eps[s[k]][s[i]];
                }
                sign = &sign * &self.alg.eps_degrees(&self.gamma, &d.degrees[s[i]]);
                let rest: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                for m in 0..self.module_dim() {
                    let a = self.act(s[i], m, *l);
                    if !a.is_zero() {
                        acc = &acc + &(&(&sign * &a) * &val(&rest, m));
                    }
                }
            }
            for i in 0..len {
                for j in i + 1..len {
                    let mut sign = if (i + j) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    for k in 0..i {
                        sign = &sign * &d.eps[s[k]][s[i]];
                    }
                    for k in (0..j).filter(|&k| k != i) {
                        sign = &sign * &d.eps[s[k]][s[j]];
                    }
                    let rest: Vec<usize> =
                        s.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
                    for q in 0..d.n {
                        let c = &d.c[s[i]][s[j]][q];
                        if !c.is_zero() {
                            let mut t = vec![q];
                            t.extend_from_slice(&rest);
                            acc = &acc + &(&(&sign * c) * &val(&t, *l));
                        }
                    }
                }
            }
            out.push(acc);
        }
        out
    }

    /// Rank of `δ^n` on the alternating `n`-cochains, together with their dimension.
    fn delta_rank(&self, n: usize) -> (usize, usize) {
        let from = self.space(n);
        let to = self.space(n + 1);
        let basis = self.cochain_basis(&from, n);
        let images: Vec<Vec<Scalar>> = basis.iter().map(|f| self.delta(&from, &to, f)).collect();
        let rank = if images.is_empty() || to.coords.is_empty() { 0 } else { naive_rank(images) };
        (basis.len(), rank)
    }

    /// `(dim C^n, dim Z^n, dim B^n, dim H^n)`.
    pub fn dims(&self, n: usize) -> (usize, usize, usize, usize) {
        let (c, r) = self.delta_rank(n);
        let b = if n == 0 { 0 } else { self.delta_rank(n - 1).1 };
        let z = c - r;
        (c, z, b, z - b)
    }

    /// `δ(δ f)` vanishes for the cochain with the given coordinates on the alternating basis.
    pub fn delta_squared_vanishes(&self, n: usize, coords: &[Scalar]) -> bool {
        let s0 = self.space(n);
        let s1 = self.space(n + 1);
        let s2 = self.space(n + 2);
        let basis = self.cochain_basis(&s0, n);
        let mut f = vec![Scalar::zero(); s0.coords.len()];
        for (b, c) in basis.iter().zip(coords) {
            for (x, y) in f.iter_mut().zip(b) {
                *x = &*x + &(c * y);
            }
        }
        let df = self.delta(&s0, &s1, &f);
        self.delta(&s1, &s2, &df).iter().all(Scalar::is_zero)
    }
}

/// Every element of a finite grading group.
pub fn group_elements(alg: &ColorLieAlgebra) -> Vec<GroupElement> {
    let g = alg.group();
    assert_eq!(g.free_rank(), 0, "enumeration needs a finite group");
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &n in g.torsion_orders() {
        out = out.into_iter().flat_map(|v| (0..n as i64).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(|v| g.element(&v).unwrap()).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of PBW monomials of length `p` with `even` even and `odd` odd generators.
pub fn pbw_count(even: usize, odd: usize, p: usize) -> usize {
    (0..=p)
        .map(|k| {
            let multisets = if even == 0 { usize::from(k == 0) } else { binomial(even + k - 1, k) };
            multisets * binomial(odd, p - k)
        })
        .sum()
}
