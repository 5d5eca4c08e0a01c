//! Graded ε-skew cochains `C^n(L, M)_γ`, the Chevalley–Eilenberg coboundary
//! and exact cohomology dimensions per degree slice.
//!
//! A cochain is stored on admissible index tuples only: nondecreasing tuples
//! where an index may repeat only if its basis vector is odd
//! (`ε(g_i, g_i) = -1`). Values on other tuples follow from
//! `f(…, a, b, …) = -ε(|a|, |b|) f(…, b, a, …)` applied to adjacent pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{ColorLieAlgebra, GradedVector};
use crate::error::{Error, Result};
use crate::grading::GroupElement;
use crate::linalg::{complement_indices, Matrix};
use crate::representation::{ModuleSpec, ModuleVector};
use crate::scalar::Scalar;

pub type Tuple = Vec<usize>;

/// Sorts `tuple` by adjacent transpositions, returning the admissible
/// representative and the factor `s` with `f(tuple) = s · f(representative)`,
/// or `None` when every ε-skew cochain vanishes on `tuple`.
pub fn skew_normalize(alg: &ColorLieAlgebra, tuple: &[usize]) -> Option<(Tuple, Scalar)> {
    let mut t = tuple.to_vec();
    let mut sign = Scalar::one();
    // insertion sort; each adjacent swap (a, b) -> (b, a) contributes -ε(a, b)
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            let (a, b) = (t[j - 1], t[j]);
            sign = -(&sign * alg.eps(a, b));
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && !alg.is_odd(w[0])) {
        return None;
    }
    Some((t, sign))
}

pub fn is_admissible(alg: &ColorLieAlgebra, tuple: &[usize]) -> bool {
    tuple.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && alg.is_odd(w[0])))
        && tuple.iter().all(|&i| i < alg.dim())
}

/// All admissible tuples of length `n`, in lexicographic order.
pub fn admissible_tuples(alg: &ColorLieAlgebra, n: usize) -> Vec<Tuple> {
    fn rec(alg: &ColorLieAlgebra, n: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&l) if alg.is_odd(l) => l,
            Some(&l) => l + 1,
        };
        for i in start..alg.dim() {
            cur.push(i);
            rec(alg, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(alg, n, &mut Vec::new(), &mut out);
    out
}

/// Degree `γ + α₁ + … + α_n` of the value on `tuple`.
fn value_degree(alg: &ColorLieAlgebra, degree: &GroupElement, tuple: &[usize]) -> GroupElement {
    let group = alg.group();
    tuple.iter().fold(degree.clone(), |acc, &i| group.compose_unchecked(&acc, alg.degree(i)))
}

/// Coordinate basis of `C^n(L, M)_γ`: admissible tuples paired with the
/// module basis vectors of the forced degree.
pub fn cochain_tuple_basis(alg: &ColorLieAlgebra, n: usize, degree: &GroupElement, module: &ModuleSpec) -> Vec<(Tuple, usize)> {
    let mut out = Vec::new();
    for t in admissible_tuples(alg, n) {
        let target = value_degree(alg, degree, &t);
        for m in 0..module.dim(alg) {
            if module.degree(alg, m) == target {
                out.push((t.clone(), m));
            }
        }
    }
    out
}

/// An ε-skew `n`-cochain of homogeneous degree `γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    arity: usize,
    degree: GroupElement,
    values: BTreeMap<Tuple, ModuleVector>,
}

impl Cochain {
    pub fn zero(arity: usize, degree: GroupElement) -> Self {
        Cochain { arity, degree, values: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored values on admissible tuples.
    pub fn values(&self) -> &BTreeMap<Tuple, ModuleVector> {
        &self.values
    }

    /// Sets `f(tuple) = value` for an arbitrary tuple, storing it on the admissible representative.
    pub fn set(&mut self, alg: &ColorLieAlgebra, tuple: &[usize], value: ModuleVector) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::InadmissibleCochain(format!("tuple {tuple:?} has wrong arity")));
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= alg.dim()) {
            return Err(Error::IndexOutOfRange { index: i, dim: alg.dim() });
        }
        match skew_normalize(alg, tuple) {
            None if value.is_zero() => Ok(()),
            None => Err(Error::InadmissibleCochain(format!(
                "value on {tuple:?} must vanish for an ε-skew cochain"
            ))),
            Some((t, sign)) => {
                let v = value.scaled(&sign.inv()?);
                if v.is_zero() {
                    self.values.remove(&t);
                } else {
                    self.values.insert(t, v);
                }
                Ok(())
            }
        }
    }

    /// Adds `value` to the stored value on an admissible tuple.
    fn accumulate(&mut self, tuple: Tuple, value: &ModuleVector) {
        let entry = self.values.entry(tuple.clone()).or_default();
        entry.add_assign(value);
        if entry.is_zero() {
            self.values.remove(&tuple);
        }
    }

    /// `f(x_{t₁}, …, x_{t_n})` for any basis tuple.
    pub fn eval(&self, alg: &ColorLieAlgebra, tuple: &[usize]) -> ModuleVector {
        match skew_normalize(alg, tuple) {
            None => ModuleVector::zero(),
            Some((t, sign)) => self.values.get(&t).map_or_else(ModuleVector::zero, |v| v.scaled(&sign)),
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval_vectors(&self, alg: &ColorLieAlgebra, args: &[GradedVector]) -> ModuleVector {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = ModuleVector::zero();
        let mut idx = vec![0usize; self.arity];
        fn rec(
            f: &Cochain,
            alg: &ColorLieAlgebra,
            args: &[GradedVector],
            pos: usize,
            idx: &mut Vec<usize>,
            coeff: Scalar,
            out: &mut ModuleVector,
        ) {
            if pos == args.len() {
                out.add_scaled(&f.eval(alg, idx), &coeff);
                return;
            }
            for (&i, c) in &args[pos] {
                idx[pos] = i;
                rec(f, alg, args, pos + 1, idx, &coeff * c, out);
            }
        }
        rec(self, alg, args, 0, &mut idx, Scalar::one(), &mut out);
        out
    }

    /// Checks admissibility of stored tuples and the degree of every value.
    pub fn validate(&self, alg: &ColorLieAlgebra, module: &ModuleSpec) -> Result<()> {
        for (t, v) in &self.values {
            if t.len() != self.arity || !is_admissible(alg, t) {
                return Err(Error::InadmissibleCochain(format!("stored tuple {t:?} is not admissible")));
            }
            let target = value_degree(alg, &self.degree, t);
            let dim = module.dim(alg);
            for &m in v.keys() {
                if m >= dim {
                    return Err(Error::IndexOutOfRange { index: m, dim });
                }
                if module.degree(alg, m) != target {
                    return Err(Error::InadmissibleCochain(format!(
                        "value on {t:?} has a component outside degree {target}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Cochain) {
        for (t, v) in &other.values {
            self.accumulate(t.clone(), v);
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.arity, self.degree.clone());
        for (t, v) in &self.values {
            out.accumulate(t.clone(), &v.scaled(s));
        }
        out
    }

    /// Coordinates in a tuple basis from [`cochain_tuple_basis`].
    pub fn coordinates(&self, basis: &[(Tuple, usize)]) -> Vec<Scalar> {
        basis
            .iter()
            .map(|(t, m)| self.values.get(t).map_or_else(Scalar::zero, |v| v.coeff(m)))
            .collect()
    }

    pub fn from_coordinates(arity: usize, degree: GroupElement, basis: &[(Tuple, usize)], coords: &[Scalar]) -> Self {
        let mut out = Cochain::zero(arity, degree);
        for ((t, m), c) in basis.iter().zip(coords) {
            out.accumulate(t.clone(), &ModuleVector::from_term(*m, c.clone()));
        }
        out
    }
}

/// Color Chevalley–Eilenberg coboundary.
///
/// For `f ∈ C^n(L, M)_γ` and `ε_i = ∏_{h<i} ε(α_h, α_i)`:
///
/// ```text
/// δf(x_1, …, x_{n+1}) = Σ_i (-1)^{i+1} ε(γ, α_i) ε_i  x_i · f(…, x̂_i, …)
///                     + Σ_{i<j} (-1)^{i+j} ε_i ε_j ε(α_j, α_i)  f([x_i, x_j], …, x̂_i, …, x̂_j, …)
/// ```
///
/// The weight of the bracket term is the sign of moving `x_i, x_j` to the
/// front of the argument list with the skew rule.
pub fn delta_ce(alg: &ColorLieAlgebra, module: &ModuleSpec, f: &Cochain) -> Result<Cochain> {
    f.validate(alg, module)?;
    Ok(coboundary(alg, module, f, BracketWeight::Koszul))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BracketWeight {
    /// `ε_i ε_j ε(α_j, α_i)`.
    Koszul,
    /// `ε(γ, α_i) ε(γ, α_j) ε_i ε_j`, which disagrees with first-order transport when `ε(α_i, α_j) ≠ 1`.
    #[allow(dead_code)]
    Literal,
}

pub(crate) fn coboundary(alg: &ColorLieAlgebra, module: &ModuleSpec, f: &Cochain, weight: BracketWeight) -> Cochain {
    let n = f.arity;
    let gamma = &f.degree;
    let mut out = Cochain::zero(n + 1, gamma.clone());
    for t in admissible_tuples(alg, n + 1) {
        let value = coboundary_value(alg, module, f, &t, weight);
        if !value.is_zero() {
            out.values.insert(t, value);
        }
    }
    out
}

/// `δf` evaluated on the basis tuple `t` (positions are 0-based here).
pub(crate) fn coboundary_value(
    alg: &ColorLieAlgebra,
    module: &ModuleSpec,
    f: &Cochain,
    t: &[usize],
    weight: BracketWeight,
) -> ModuleVector {
    let gamma = &f.degree;
    let len = t.len();
    // eps_prefix[i] = ∏_{h<i} ε(α_h, α_i)
    let eps_prefix: Vec<Scalar> = (0..len)
        .map(|i| (0..i).fold(Scalar::one(), |acc, h| &acc * alg.eps(t[h], t[i])))
        .collect();
    let eps_gamma: Vec<Scalar> = (0..len).map(|i| alg.eps_degrees(gamma, alg.degree(t[i]))).collect();
    let mut value = ModuleVector::zero();
    for i in 0..len {
        let rest: Tuple = t.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &x)| x).collect();
        let inner = f.eval(alg, &rest);
        if inner.is_zero() {
            continue;
        }
        // (-1)^{(i+1)+1} with 1-based i+1
        let mut w = &eps_gamma[i] * &eps_prefix[i];
        if i % 2 == 1 {
            w = -w;
        }
        value.add_scaled(&module.act(alg, t[i], &inner), &w);
    }
    for i in 0..len {
        for j in i + 1..len {
            let br = alg.bracket_basis(t[i], t[j]);
            if br.is_zero() {
                continue;
            }
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect();
            let mut w = match weight {
                BracketWeight::Koszul => &(&eps_prefix[i] * &eps_prefix[j]) * alg.eps(t[j], t[i]),
                BracketWeight::Literal => &(&(&eps_gamma[i] * &eps_gamma[j]) * &eps_prefix[i]) * &eps_prefix[j],
            };
            // (-1)^{(i+1)+(j+1)}
            if (i + j) % 2 == 1 {
                w = -w;
            }
            let mut args = Vec::with_capacity(len - 1);
            for (&k, c) in br {
                args.clear();
                args.push(k);
                args.extend_from_slice(&rest);
                let inner = f.eval(alg, &args);
                if !inner.is_zero() {
                    value.add_scaled(&inner, &(&w * c));
                }
            }
        }
    }
    value
}

/// The matrix of `δ^n` restricted to degree `γ`, with its domain and codomain bases.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub arity: usize,
    pub degree: GroupElement,
    pub domain: Vec<(Tuple, usize)>,
    pub codomain: Vec<(Tuple, usize)>,
    pub matrix: Matrix,
}

pub fn coboundary_matrix(alg: &ColorLieAlgebra, module: &ModuleSpec, n: usize, degree: &GroupElement) -> ComplexSlice {
    let domain = cochain_tuple_basis(alg, n, degree, module);
    let codomain = cochain_tuple_basis(alg, n + 1, degree, module);
    let cols: Vec<Vec<Scalar>> = (0..domain.len())
        .map(|j| {
            let mut unit = vec![Scalar::zero(); domain.len()];
            unit[j] = Scalar::one();
            let f = Cochain::from_coordinates(n, degree.clone(), &domain, &unit);
            coboundary(alg, module, &f, BracketWeight::Koszul).coordinates(&codomain)
        })
        .collect();
    let matrix = Matrix::from_columns(codomain.len(), &cols);
    ComplexSlice { arity: n, degree: degree.clone(), domain, codomain, matrix }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// `(dim C^n_γ, dim Z^n_γ, dim B^n_γ, dim H^n_γ)`; for `n = 0` there are no coboundaries.
pub fn cohomology_dims(alg: &ColorLieAlgebra, module: &ModuleSpec, n: usize, degree: &GroupElement) -> CohomologyDims {
    let slice = coboundary_matrix(alg, module, n, degree);
    let cochains = slice.domain.len();
    let cocycles = cochains - slice.matrix.rank();
    let coboundaries = if n == 0 { 0 } else { coboundary_matrix(alg, module, n - 1, degree).matrix.rank() };
    CohomologyDims { cochains, cocycles, coboundaries, cohomology: cocycles - coboundaries }
}

/// Cocycles whose classes form a basis of `H^n(L, M)_γ`.
pub fn cohomology_representatives(alg: &ColorLieAlgebra, module: &ModuleSpec, n: usize, degree: &GroupElement) -> Vec<Cochain> {
    let slice = coboundary_matrix(alg, module, n, degree);
    let cocycles = slice.matrix.kernel();
    let boundaries: Vec<Vec<Scalar>> = if n == 0 {
        Vec::new()
    } else {
        let prev = coboundary_matrix(alg, module, n - 1, degree);
        (0..prev.matrix.cols()).map(|c| prev.matrix.column(c)).collect()
    };
    complement_indices(&boundaries, &cocycles)
        .into_iter()
        .map(|i| Cochain::from_coordinates(n, degree.clone(), &slice.domain, &cocycles[i]))
        .collect()
}

/// Expresses the class of a cocycle `f` in the basis `reps` of `H^n_γ`:
/// returns coefficients `a` with `f - Σ a_k reps_k ∈ B^n_γ`, or `None` if
/// `f` is not a cocycle.
pub fn cohomology_class(
    alg: &ColorLieAlgebra,
    module: &ModuleSpec,
    f: &Cochain,
    reps: &[Cochain],
) -> Result<Option<Vec<Scalar>>> {
    f.validate(alg, module)?;
    let n = f.arity;
    let degree = f.degree.clone();
    if !delta_ce(alg, module, f)?.is_zero() {
        return Ok(None);
    }
    let basis = cochain_tuple_basis(alg, n, &degree, module);
    let mut cols: Vec<Vec<Scalar>> = reps.iter().map(|r| r.coordinates(&basis)).collect();
    if n > 0 {
        let prev = coboundary_matrix(alg, module, n - 1, &degree);
        cols.extend((0..prev.matrix.cols()).map(|c| prev.matrix.column(c)));
    }
    let target = f.coordinates(&basis);
    // solve [reps | B] a = f
    let mut aug = cols.clone();
    aug.push(target);
    let m = Matrix::from_columns(basis.len(), &aug);
    let (rref, pivots) = m.rref();
    let last = aug.len() - 1;
    if pivots.contains(&last) {
        return Ok(None);
    }
    let mut sol = vec![Scalar::zero(); cols.len()];
    for (r, &p) in pivots.iter().enumerate() {
        sol[p] = rref.get(r, last).clone();
    }
    // representatives are independent modulo B, so their coefficients are unique
    Ok(Some(sol[..reps.len()].to_vec()))
}

#[derive(Clone, Debug)]
pub struct Rigidity {
    pub rigid: bool,
    pub h2_dim: usize,
    /// Representative 2-cocycles spanning `H²(L, L)_e` (empty when rigid).
    pub witnesses: Vec<Cochain>,
}

/// Graded rigidity test: `H²(L, L)_e = 0`.
pub fn is_graded_rigid(alg: &ColorLieAlgebra) -> Rigidity {
    let e = alg.group().identity();
    let witnesses = cohomology_representatives(alg, &ModuleSpec::Adjoint, 2, &e);
    Rigidity { rigid: witnesses.is_empty(), h2_dim: witnesses.len(), witnesses }
}

/// Degrees `γ` for which `C^n(L, M)_γ` can be nonzero: module degrees minus sums of `n` basis degrees.
pub fn occurring_degrees(alg: &ColorLieAlgebra, module: &ModuleSpec, n: usize) -> Vec<GroupElement> {
    let group = alg.group();
    let mut out: Vec<GroupElement> = Vec::new();
    for t in admissible_tuples(alg, n) {
        let s = value_degree(alg, &group.identity(), &t);
        for m in 0..module.dim(alg) {
            let g = group.compose_unchecked(&module.degree(alg, m), &group.inverse(&s));
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}
