//! Finite-dimensional color Lie algebras given by structure constants.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{Bicharacter, GradingGroup, GroupElement};
use crate::lincomb::LinComb;
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// A vector of the algebra in the homogeneous basis, keyed by basis index.
pub type GradedVector = LinComb<usize>;

/// Homogeneity of a vector with respect to the `G`-grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(GroupElement),
    Inhomogeneous,
}

/// A basis vector together with its `G`-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub name: String,
    pub degree: GroupElement,
}

/// Color Lie algebra `L = ⊕ L_g` with bracket given on basis pairs.
///
/// The full table `[x_i, x_j]` is stored. Entries supplied for one order of a
/// pair determine the other through `[x_j, x_i] = -ε(g_j, g_i)[x_i, x_j]`;
/// entries supplied for both orders are kept as given so that
/// [`verify_color_antisymmetry`](Self::verify_color_antisymmetry) can report
/// inconsistencies.
#[derive(Clone, Debug)]
pub struct ColorLieAlgebra {
    bicharacter: Bicharacter,
    basis: Vec<BasisElement>,
    table: Vec<Vec<GradedVector>>,
    eps: Vec<Vec<Scalar>>,
    given: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ColorLieAlgebraBuilder {
    bicharacter: Bicharacter,
    basis: Vec<BasisElement>,
    brackets: Vec<(usize, usize, GradedVector)>,
}

impl ColorLieAlgebraBuilder {
    pub fn basis_element(mut self, name: &str, degree: GroupElement) -> Self {
        self.basis.push(BasisElement { name: name.to_string(), degree });
        self
    }

    pub fn add_basis_element(&mut self, name: &str, degree: GroupElement) -> usize {
        self.basis.push(BasisElement { name: name.to_string(), degree });
        self.basis.len() - 1
    }

    /// Sets `[x_left, x_right] = Σ coeff · x_out` (indices into the basis),
    /// replacing any earlier value for the same ordered pair.
    pub fn bracket(mut self, left: usize, right: usize, terms: &[(usize, Scalar)]) -> Self {
        self.set_bracket(left, right, terms.iter().cloned().collect());
        self
    }

    /// Sets (or replaces) the value of `[x_left, x_right]`.
    pub fn set_bracket(&mut self, left: usize, right: usize, value: GradedVector) {
        if let Some(entry) = self.brackets.iter_mut().find(|(l, r, _)| *l == left && *r == right) {
            entry.2 = value;
        } else {
            self.brackets.push((left, right, value));
        }
    }

    /// Same as [`bracket`](Self::bracket) with basis names.
    pub fn bracket_named(self, left: &str, right: &str, terms: &[(&str, Scalar)]) -> Self {
        let idx = |n: &str| {
            self.basis.iter().position(|b| b.name == n).unwrap_or_else(|| panic!("unknown basis element {n}"))
        };
        let (l, r) = (idx(left), idx(right));
        let terms: Vec<(usize, Scalar)> = terms.iter().map(|(n, c)| (idx(n), c.clone())).collect();
        self.bracket(l, r, &terms)
    }

    /// Builds and validates grading compatibility, color antisymmetry and the color Jacobi identity.
    pub fn build(self) -> Result<ColorLieAlgebra> {
        let alg = self.build_unverified()?;
        let report = alg.verify_all();
        if report.is_valid() {
            Ok(alg)
        } else {
            Err(Error::InvalidAlgebra(report))
        }
    }

    /// Builds without checking any axiom; only the shape is validated.
    pub fn build_unverified(self) -> Result<ColorLieAlgebra> {
        let n = self.basis.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("algebra must have at least one basis element".into()));
        }
        let group = self.bicharacter.group().clone();
        for b in &self.basis {
            if b.degree.exponents().len() != group.generator_count() {
                return Err(Error::ShapeMismatch(format!("degree of {} has wrong length", b.name)));
            }
        }
        let eps: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.bicharacter.eval_unchecked(&self.basis[i].degree, &self.basis[j].degree))
                    .collect()
            })
            .collect();
        let mut table = vec![vec![GradedVector::zero(); n]; n];
        let mut given = BTreeSet::new();
        for (l, r, v) in &self.brackets {
            for &i in [l, r].into_iter().chain(v.keys()) {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, dim: n });
                }
            }
            table[*l][*r] = v.clone();
            given.insert((*l, *r));
        }
        for &(l, r) in &given {
            if l != r && !given.contains(&(r, l)) {
                table[r][l] = table[l][r].scaled(&-&eps[r][l]);
            }
        }
        Ok(ColorLieAlgebra { bicharacter: self.bicharacter, basis: self.basis, table, eps, given })
    }
}

impl ColorLieAlgebra {
    pub fn builder(bicharacter: Bicharacter) -> ColorLieAlgebraBuilder {
        ColorLieAlgebraBuilder { bicharacter, basis: Vec::new(), brackets: Vec::new() }
    }

    /// A builder preloaded with this algebra's basis and given brackets.
    pub fn to_builder(&self) -> ColorLieAlgebraBuilder {
        ColorLieAlgebraBuilder {
            bicharacter: self.bicharacter.clone(),
            basis: self.basis.clone(),
            brackets: self.given.iter().map(|&(l, r)| (l, r, self.table[l][r].clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> &GradingGroup {
        self.bicharacter.group()
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.bicharacter
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Conductor used for scalar literals that mention `z^k` without an explicit `zM`.
    pub fn bicharacter_conductor(&self) -> u32 {
        self.bicharacter.conductor()
    }

    /// Resolves basis names to indices.
    pub fn word_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref()).ok_or_else(|| Error::Parse {
                    context: "word".into(),
                    message: format!("unknown basis element `{}`", n.as_ref()),
                })
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.basis[i].degree
    }

    /// `ε(g_i, g_j)` for basis indices.
    pub fn eps(&self, i: usize, j: usize) -> &Scalar {
        &self.eps[i][j]
    }

    /// `ε(g, h)` for arbitrary degrees.
    pub fn eps_degrees(&self, g: &GroupElement, h: &GroupElement) -> Scalar {
        self.bicharacter.eval_unchecked(g, h)
    }

    /// `ε(g_i, g_i) = -1`: the basis vector is "odd" and may be repeated in
    /// skew tuples but not in PBW monomials.
    pub fn is_odd(&self, i: usize) -> bool {
        self.eps[i][i].is_minus_one()
    }

    /// Bracket pairs supplied explicitly at construction.
    pub fn given_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.given.iter().copied()
    }

    /// `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &GradedVector {
        &self.table[i][j]
    }

    /// Structure constant `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].coeff(&k)
    }

    fn check_vector(&self, v: &GradedVector) -> Result<()> {
        match v.keys().next_back() {
            Some(&k) if k >= self.dim() => Err(Error::IndexOutOfRange { index: k, dim: self.dim() }),
            _ => Ok(()),
        }
    }

    /// Bilinear bracket of arbitrary (possibly inhomogeneous) vectors.
    pub fn bracket(&self, a: &GradedVector, b: &GradedVector) -> Result<GradedVector> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        let mut out = GradedVector::zero();
        for (&i, ci) in a {
            for (&j, cj) in b {
                out.add_scaled(&self.table[i][j], &(ci * cj));
            }
        }
        Ok(out)
    }

    pub fn homogeneity(&self, v: &GradedVector) -> Homogeneity {
        let mut degree: Option<&GroupElement> = None;
        for &i in v.keys() {
            match degree {
                None => degree = Some(&self.basis[i].degree),
                Some(d) if d != &self.basis[i].degree => return Homogeneity::Inhomogeneous,
                _ => {}
            }
        }
        match degree {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Homogeneous(d.clone()),
        }
    }

    /// Structure constants respect the grading: `c_{ij}^k ≠ 0` only if `g_k = g_i + g_j`.
    pub fn verify_grading(&self) -> VerificationReport {
        let mut report = VerificationReport::new("grading");
        let group = self.group();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let target = group.compose_unchecked(self.degree(i), self.degree(j));
                for &k in self.table[i][j].keys() {
                    if self.degree(k) != &target {
                        report.push(
                            "grading",
                            vec![self.name(i).into(), self.name(j).into(), self.name(k).into()],
                            format!(
                                "c_{{{},{}}}^{} is nonzero but deg {} = {} differs from {}",
                                self.name(i),
                                self.name(j),
                                self.name(k),
                                self.name(k),
                                self.degree(k),
                                target
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    /// `[x_i, x_j] + ε(g_i, g_j)[x_j, x_i] = 0` on all basis pairs, diagonal included.
    pub fn verify_color_antisymmetry(&self) -> VerificationReport {
        let mut report = VerificationReport::new("color antisymmetry");
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let mut defect = self.table[i][j].clone();
                defect.add_scaled(&self.table[j][i], &self.eps[i][j]);
                if !defect.is_zero() {
                    report.push(
                        "antisymmetry",
                        vec![self.name(i).into(), self.name(j).into()],
                        format!("[a,b] + ε(a,b)[b,a] = {}", self.render_vector(&defect)),
                    );
                }
            }
        }
        report
    }

    /// `ε(c,a)[a,[b,c]] + ε(a,b)[b,[c,a]] + ε(b,c)[c,[a,b]]` for basis triples `i ≤ j ≤ k`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> GradedVector {
        let br = |a: usize, v: &GradedVector| -> GradedVector {
            let mut out = GradedVector::zero();
            for (&m, c) in v {
                out.add_scaled(&self.table[a][m], c);
            }
            out
        };
        let mut d = br(i, &self.table[j][k]).scaled(&self.eps[k][i]);
        d.add_scaled(&br(j, &self.table[k][i]), &self.eps[i][j]);
        d.add_scaled(&br(k, &self.table[i][j]), &self.eps[j][k]);
        d
    }

    pub fn verify_color_jacobi(&self) -> VerificationReport {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k)))).collect();
        let defects: Vec<_> = triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let d = self.jacobiator(i, j, k);
                (!d.is_zero()).then_some((i, j, k, d))
            })
            .collect();
        let mut report = VerificationReport::new("color Jacobi");
        for (i, j, k, d) in defects {
            report.push(
                "jacobi",
                vec![self.name(i).into(), self.name(j).into(), self.name(k).into()],
                format!("defect {}", self.render_vector(&d)),
            );
        }
        report
    }

    /// Bicharacter, grading, antisymmetry and Jacobi checks combined.
    pub fn verify_all(&self) -> VerificationReport {
        let mut report = VerificationReport::new("color Lie algebra");
        report.merge(self.bicharacter.verify());
        report.merge(self.verify_grading());
        report.merge(self.verify_color_antisymmetry());
        report.merge(self.verify_color_jacobi());
        report
    }

    /// Human-readable `2 e - h` style rendering.
    pub fn render_vector(&self, v: &GradedVector) -> String {
        crate::expr::render_combination(v.iter().map(|(&i, c)| (self.name(i).to_string(), c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(alg: &ColorLieAlgebra, name: &str) -> GradedVector {
        GradedVector::basis(alg.index_of(name).unwrap())
    }

    #[test]
    fn sl2_brackets() {
        let sl2 = fixtures::sl2();
        assert_eq!(sl2.bracket(&v(&sl2, "e"), &v(&sl2, "f")).unwrap(), v(&sl2, "h"));
        assert_eq!(sl2.bracket(&v(&sl2, "f"), &v(&sl2, "e")).unwrap(), v(&sl2, "h").neg());
        assert_eq!(sl2.bracket(&v(&sl2, "h"), &v(&sl2, "e")).unwrap(), v(&sl2, "e").scaled(&Scalar::from_integer(2)));
    }

    #[test]
    fn even_square_brackets_vanish() {
        let sl2 = fixtures::sl2();
        let mut a = v(&sl2, "e");
        a.add_term(2, Scalar::from_integer(3));
        // e + 3h is not homogeneous for a nontrivial grading, but sl2 is trivially graded
        assert!(sl2.bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn super_theta_square() {
        let s = fixtures::super_line();
        assert_eq!(s.bracket(&v(&s, "theta"), &v(&s, "theta")).unwrap(), v(&s, "z"));
    }

    #[test]
    fn dimension_mismatch() {
        let sl2 = fixtures::sl2();
        let bad = GradedVector::basis(7);
        assert!(matches!(sl2.bracket(&bad, &bad), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn fixtures_are_valid() {
        for (name, alg) in fixtures::all() {
            let r = alg.verify_all();
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn diagonal_mutation_flagged() {
        let sl2 = fixtures::sl2();
        let e = sl2.index_of("e").unwrap();
        let h = sl2.index_of("h").unwrap();
        let mutated = sl2.to_builder().bracket(e, e, &[(h, Scalar::one())]).build_unverified().unwrap();
        let r = mutated.verify_color_antisymmetry();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].location, vec!["e", "e"]);
        assert!(sl2.to_builder().bracket(e, e, &[(h, Scalar::one())]).build().is_err());
    }

    #[test]
    fn jacobi_mutation_flagged() {
        let sl2 = fixtures::sl2();
        let (e, h) = (0, 2);
        // [e, f] = 3h alone is a rescaled sl2, so perturb [h, e] instead
        let mutated = sl2.to_builder().bracket(h, e, &[(e, Scalar::from_integer(3))]).build_unverified().unwrap();
        let r = mutated.verify_color_jacobi();
        assert!(r.violations.iter().any(|v| v.location == vec!["e", "f", "h"]), "{r}");
    }

    #[test]
    fn grading_violation_names_triple() {
        let alg = fixtures::klein_color();
        let (x, y) = (0, 1);
        let bad = alg.to_builder().bracket(x, y, &[(x, Scalar::one())]).build_unverified().unwrap();
        let r = bad.verify_grading();
        assert!(r.violations.iter().any(|v| v.location == vec!["x", "y", "x"]));
    }

    #[test]
    fn homogeneity_queries() {
        let alg = fixtures::klein_color();
        assert_eq!(alg.homogeneity(&GradedVector::zero()), Homogeneity::Zero);
        assert_eq!(alg.homogeneity(&v(&alg, "x")), Homogeneity::Homogeneous(alg.degree(0).clone()));
        let mut xy = v(&alg, "x");
        xy.add_assign(&v(&alg, "y"));
        assert_eq!(alg.homogeneity(&xy), Homogeneity::Inhomogeneous);
    }
}
