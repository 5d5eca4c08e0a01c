//! Truncated graded deformations of a color Lie algebra and of its enveloping algebra.
//!
//! All series live in `K[t]/(t^{N+1})`. A deformed bracket
//! `μ_t = μ₀ + t μ₁ + … + t^N μ_N` extends to a deformed product on `U(g)` by
//! running the PBW rewriting with `μ_t` in place of the bracket; a central
//! 2-cocycle `ω` instead adds `t ω(x_a, x_b)·1` to each rewrite.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ColorLieAlgebra, GradedVector};
use crate::cochain::{admissible_tuples, cohomology_class, cohomology_representatives, delta_ce, Cochain};
use crate::enveloping::{embed, pbw_basis_enumerate, EnvelopingAlgebra, PbwMonomial, UElement};
use crate::error::{Error, Result};
use crate::hochschild::{hochschild_cocycle_check, HochschildCochain, TruncatedEnveloping};
use crate::linalg::SparseEchelon;
use crate::lincomb::{Coefficient, LinComb, Series};
use crate::report::VerificationReport;
use crate::representation::{ModuleSpec, ModuleVector};
use crate::scalar::Scalar;

pub type SeriesVector = LinComb<usize, Series>;

/// The bracket of `alg` as an adjoint 2-cochain.
pub fn bracket_cochain(alg: &ColorLieAlgebra) -> Cochain {
    let mut c = Cochain::zero(2, alg.group().identity());
    for t in admissible_tuples(alg, 2) {
        c.set(alg, &t, alg.bracket_basis(t[0], t[1]).clone()).expect("bracket is ε-skew");
    }
    c
}

fn check_bracket_component(alg: &ColorLieAlgebra, c: &Cochain, what: &str) -> Result<()> {
    if c.arity() != 2 || !c.degree().is_identity() {
        return Err(Error::InadmissibleCochain(format!("{what} must be a degree-e 2-cochain")));
    }
    c.validate(alg, &ModuleSpec::Adjoint)
}

/// `μ₀ + t μ₁ + … + t^N μ_N` with `μ₀` the bracket of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedBracket {
    components: Vec<Cochain>,
}

impl DeformedBracket {
    pub fn undeformed(alg: &ColorLieAlgebra, order: usize) -> Self {
        let mut components = vec![bracket_cochain(alg)];
        components.extend((0..order).map(|_| Cochain::zero(2, alg.group().identity())));
        DeformedBracket { components }
    }

    /// `higher[r-1] = μ_r`, padded with zeros up to `order`.
    pub fn new(alg: &ColorLieAlgebra, higher: Vec<Cochain>, order: usize) -> Result<Self> {
        if higher.len() > order {
            return Err(Error::ShapeMismatch(format!(
                "{} deformation components exceed truncation order {order}",
                higher.len()
            )));
        }
        for (r, c) in higher.iter().enumerate() {
            check_bracket_component(alg, c, &format!("μ_{}", r + 1))?;
        }
        let mut out = Self::undeformed(alg, order);
        for (r, c) in higher.into_iter().enumerate() {
            out.components[r + 1] = c;
        }
        Ok(out)
    }

    /// Components including `μ₀`, which must equal the bracket of `alg`.
    pub fn from_components(alg: &ColorLieAlgebra, components: Vec<Cochain>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::ShapeMismatch("a deformation needs at least μ₀".into()));
        };
        if *first != bracket_cochain(alg) {
            let mut r = VerificationReport::new("deformation");
            r.push("order-0", vec![], "μ₀ differs from the bracket of the algebra");
            return Err(Error::DefectiveDeformation(r));
        }
        let order = components.len() - 1;
        Self::new(alg, components.into_iter().skip(1).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, r: usize) -> &Cochain {
        &self.components[r]
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    /// `μ_t(x_i, x_j)` for all basis pairs.
    pub fn series_table(&self, alg: &ColorLieAlgebra) -> Vec<Vec<SeriesVector>> {
        let n = alg.dim();
        let order = self.order();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut out = SeriesVector::zero();
                        for (r, c) in self.components.iter().enumerate() {
                            for (&k, v) in &c.eval(alg, &[i, j]) {
                                out.add_term(k, Series::monomial(v.clone(), r, order));
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect()
    }
}

fn bracket_t(table: &[Vec<SeriesVector>], a: &SeriesVector, b: &SeriesVector) -> SeriesVector {
    let mut out = SeriesVector::zero();
    for (&i, ca) in a {
        for (&j, cb) in b {
            out.add_scaled(&table[i][j], &ca.mul_ref(cb));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiDefect {
    pub order: usize,
    pub triple: [usize; 3],
    pub defect: GradedVector,
}

/// Order-by-order color Jacobi defects of `μ_t` on basis triples `i ≤ j ≤ k`.
pub fn deformation_jacobi_defects(alg: &ColorLieAlgebra, mu: &DeformedBracket) -> Result<Vec<JacobiDefect>> {
    if *mu.component(0) != bracket_cochain(alg) {
        let mut r = VerificationReport::new("deformation");
        r.push("order-0", vec![], "μ₀ differs from the bracket of the algebra");
        return Err(Error::DefectiveDeformation(r));
    }
    let table = mu.series_table(alg);
    let n = alg.dim();
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| [i, j, k]))).collect();
    let defects: Vec<Vec<JacobiDefect>> = triples
        .par_iter()
        .map(|&[a, b, c]| {
            let basis = |i: usize| SeriesVector::from_term(i, Series::one());
            let term = |x: usize, y: usize, z: usize| {
                let inner = bracket_t(&table, &basis(y), &basis(z));
                bracket_t(&table, &basis(x), &inner).scaled(&Series::from_scalar(alg.eps(z, x).clone()))
            };
            let mut j = term(a, b, c);
            j.add_assign(&term(b, c, a));
            j.add_assign(&term(c, a, b));
            (0..=mu.order())
                .filter_map(|r| {
                    let d = j.t_coefficient(r);
                    (!d.is_zero()).then_some(JacobiDefect { order: r, triple: [a, b, c], defect: d })
                })
                .collect()
        })
        .collect();
    let mut out: Vec<JacobiDefect> = defects.into_iter().flatten().collect();
    out.sort_by_key(|d| (d.order, d.triple));
    Ok(out)
}

pub fn jacobi_report(alg: &ColorLieAlgebra, defects: &[JacobiDefect]) -> VerificationReport {
    let mut r = VerificationReport::new("deformed color Jacobi");
    for d in defects {
        r.push(
            "jacobi",
            std::iter::once(format!("t^{}", d.order)).chain(d.triple.iter().map(|&i| alg.name(i).to_string())).collect(),
            format!("defect {}", alg.render_vector(&d.defect)),
        );
    }
    r
}

/// A formal automorphism `f = id + Σ_{r≥1} t^r f_r` of `L[[t]]`, truncated at `order`.
#[derive(Clone, Debug)]
pub struct FormalMap {
    order: usize,
    // image[i] = f(x_i)
    image: Vec<SeriesVector>,
}

impl FormalMap {
    /// `higher[r-1] = f_r`, each a degree-e adjoint 1-cochain.
    pub fn new(alg: &ColorLieAlgebra, higher: &[Cochain], order: usize) -> Result<Self> {
        if higher.len() > order {
            return Err(Error::ShapeMismatch(format!("{} components exceed truncation order {order}", higher.len())));
        }
        let n = alg.dim();
        let mut image: Vec<SeriesVector> =
            (0..n).map(|i| SeriesVector::from_term(i, Series::constant(Scalar::one(), order))).collect();
        for (r, f) in higher.iter().enumerate() {
            if f.arity() != 1 || !f.degree().is_identity() {
                return Err(Error::InadmissibleCochain(format!("f_{} must be a degree-e 1-cochain", r + 1)));
            }
            f.validate(alg, &ModuleSpec::Adjoint)?;
            for (i, img) in image.iter_mut().enumerate() {
                for (&k, c) in &f.eval(alg, &[i]) {
                    img.add_term(k, Series::monomial(c.clone(), r + 1, order));
                }
            }
        }
        Ok(FormalMap { order, image })
    }

    pub fn apply(&self, v: &SeriesVector) -> SeriesVector {
        let mut out = SeriesVector::zero();
        for (&i, c) in v {
            out.add_scaled(&self.image[i], c);
        }
        out
    }

    /// `f⁻¹ = Σ_k (id - f)^k`, exact mod `t^{N+1}` since `f - id` has no constant term.
    pub fn inverse(&self) -> FormalMap {
        let n = self.image.len();
        let one = Series::constant(Scalar::one(), self.order);
        let image = (0..n)
            .map(|i| {
                let mut term = SeriesVector::from_term(i, one.clone());
                let mut sum = term.clone();
                for _ in 0..self.order {
                    // term ← (id - f)(term)
                    let mut next = term.clone();
                    next.sub_assign(&self.apply(&term));
                    term = next;
                    sum.add_assign(&term);
                }
                sum
            })
            .collect();
        FormalMap { order: self.order, image }
    }
}

/// Transports `μ` along `f = id + Σ t^r f_r`: returns `μ' = f ∘ μ ∘ (f⁻¹ × f⁻¹)`,
/// so that `μ = f⁻¹ ∘ μ' ∘ (f × f)` and `μ'₁ = μ₁ - δ f₁`.
pub fn equivalence_transform(alg: &ColorLieAlgebra, mu: &DeformedBracket, f: &[Cochain]) -> Result<DeformedBracket> {
    let order = mu.order();
    let map = FormalMap::new(alg, f, order)?;
    let inv = map.inverse();
    let table = mu.series_table(alg);
    let e = alg.group().identity();
    let mut components: Vec<Cochain> = (0..=order).map(|_| Cochain::zero(2, e.clone())).collect();
    for t in admissible_tuples(alg, 2) {
        let a = inv.image[t[0]].clone();
        let b = inv.image[t[1]].clone();
        let v = map.apply(&bracket_t(&table, &a, &b));
        for (r, comp) in components.iter_mut().enumerate() {
            comp.set(alg, &t, v.t_coefficient(r))?;
        }
    }
    DeformedBracket::from_components(alg, components)
}

/// `L ⊕ Kc` with `[X, Y]_ω = [X, Y] + ω(X, Y) c`; `c` is basis index 0.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub base: ColorLieAlgebra,
    pub omega: Cochain,
    pub algebra: ColorLieAlgebra,
}

impl CentralExtension {
    pub fn central_index(&self) -> usize {
        0
    }
}

fn check_central_cocycle(alg: &ColorLieAlgebra, omega: &Cochain) -> Result<()> {
    if omega.arity() != 2 || !omega.degree().is_identity() {
        return Err(Error::InadmissibleCochain("ω must be a degree-e 2-cochain".into()));
    }
    let d = delta_ce(alg, &ModuleSpec::Trivial, omega)?;
    if d.is_zero() {
        return Ok(());
    }
    let mut r = VerificationReport::new("central cocycle");
    for (t, v) in d.values() {
        r.push(
            "cocycle",
            t.iter().map(|&i| alg.name(i).to_string()).collect(),
            format!("δω = {}", crate::expr::render_combination(v.iter().map(|(_, c)| (String::new(), c.clone())))),
        );
    }
    Err(Error::NotACocycle(r))
}

pub fn central_extension(alg: &ColorLieAlgebra, omega: &Cochain) -> Result<CentralExtension> {
    check_central_cocycle(alg, omega)?;
    let mut name = "c".to_string();
    while alg.index_of(&name).is_some() {
        name.push('\'');
    }
    let mut b = ColorLieAlgebra::builder(alg.bicharacter().clone()).basis_element(&name, alg.group().identity());
    for be in alg.basis() {
        b = b.basis_element(&be.name, be.degree.clone());
    }
    for t in admissible_tuples(alg, 2) {
        let (i, j) = (t[0], t[1]);
        let mut v: GradedVector = alg.bracket_basis(i, j).iter().map(|(&k, c)| (k + 1, c.clone())).collect();
        v.add_assign(&omega.eval(alg, &t).iter().map(|(_, c)| (0, c.clone())).collect());
        if !v.is_zero() {
            b.set_bracket(i + 1, j + 1, v);
        }
    }
    let algebra = b.build()?;
    Ok(CentralExtension { base: alg.clone(), omega: omega.clone(), algebra })
}

/// Whether the class of a central 2-cocycle in `H²(L, K)_e` vanishes.
pub fn central_class_is_zero(alg: &ColorLieAlgebra, omega: &Cochain) -> Result<bool> {
    let e = alg.group().identity();
    let reps = cohomology_representatives(alg, &ModuleSpec::Trivial, 2, &e);
    match cohomology_class(alg, &ModuleSpec::Trivial, omega, &reps)? {
        None => Err(Error::NotACocycle(VerificationReport::new("central cocycle"))),
        Some(coords) => Ok(coords.iter().all(Scalar::is_zero)),
    }
}

/// A deformed product `π_t = Σ t^r π_r` on `U(g)`, tabulated on pairs of PBW
/// monomials of total length at most the cutoff.
pub struct DeformedMultiplication {
    alg: ColorLieAlgebra,
    order: usize,
    cutoff: usize,
    basis: Vec<PbwMonomial>,
    table: BTreeMap<(PbwMonomial, PbwMonomial), UElement<Series>>,
}

fn tabulate(alg: &ColorLieAlgebra, env: &EnvelopingAlgebra<Series>, order: usize, cutoff: usize) -> DeformedMultiplication {
    let basis = pbw_basis_enumerate(alg, cutoff);
    let pairs: Vec<(PbwMonomial, PbwMonomial)> = basis
        .iter()
        .flat_map(|u| basis.iter().filter(|v| u.len() + v.len() <= cutoff).map(move |v| (u.clone(), v.clone())))
        .collect();
    let table = pairs
        .into_par_iter()
        .map(|(u, v)| {
            let one = Series::constant(Scalar::one(), order);
            let p = env.multiply(&UElement::from_term(u.clone(), one.clone()), &UElement::from_term(v.clone(), one));
            ((u, v), p)
        })
        .collect();
    DeformedMultiplication { alg: alg.clone(), order, cutoff, basis, table }
}

/// The unique extension of `μ_t` to `U(g)`, tabulated up to filtration `cutoff`.
pub fn extend_deformation_to_u(alg: &ColorLieAlgebra, mu: &DeformedBracket, cutoff: usize) -> Result<DeformedMultiplication> {
    let defects = deformation_jacobi_defects(alg, mu)?;
    if !defects.is_empty() {
        return Err(Error::DefectiveDeformation(jacobi_report(alg, &defects)));
    }
    let relations = mu
        .series_table(alg)
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.iter().map(|(&k, c)| (PbwMonomial::generator(k), c.clone())).collect()).collect())
        .collect();
    let env = EnvelopingAlgebra::from_relations(alg, relations)?;
    Ok(tabulate(alg, &env, mu.order(), cutoff))
}

/// `U(g)` deformed by the central cocycle: `y_a y_b = ε y_b y_a + [x_a, x_b] + t ω(x_a, x_b)·1`.
pub fn central_extension_deformation(
    alg: &ColorLieAlgebra,
    omega: &Cochain,
    cutoff: usize,
    order: usize,
) -> Result<DeformedMultiplication> {
    check_central_cocycle(alg, omega)?;
    let n = alg.dim();
    let relations = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut r: UElement<Series> = embed(alg.bracket_basis(a, b));
                    let w = omega.eval(alg, &[a, b]).coeff(&0);
                    if order >= 1 && !w.is_zero() {
                        r.add_term(PbwMonomial::unit(), Series::monomial(w, 1, order));
                    }
                    r
                })
                .collect()
        })
        .collect();
    let env = EnvelopingAlgebra::from_relations(alg, relations)?;
    Ok(tabulate(alg, &env, order, cutoff))
}

impl DeformedMultiplication {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn algebra(&self) -> &ColorLieAlgebra {
        &self.alg
    }

    pub fn basis(&self) -> &[PbwMonomial] {
        &self.basis
    }

    /// `π_t(u, v)` for tabulated monomials.
    pub fn product(&self, u: &PbwMonomial, v: &PbwMonomial) -> Option<&UElement<Series>> {
        self.table.get(&(u.clone(), v.clone()))
    }

    /// `π_r(u, v)` for tabulated monomials.
    pub fn pi(&self, r: usize, u: &PbwMonomial, v: &PbwMonomial) -> Option<UElement> {
        self.product(u, v).map(|p| p.t_coefficient(r))
    }

    pub fn table(&self) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial), &UElement<Series>)> {
        self.table.iter()
    }

    /// `π_t` extended bilinearly; every pair of monomials must be tabulated.
    fn product_linear(&self, a: &UElement<Series>, b: &UElement<Series>) -> UElement<Series> {
        let mut out = UElement::zero();
        for (m, ca) in a {
            for (n, cb) in b {
                let p = self.product(m, n).expect("pair within the tabulated cutoff");
                out.add_scaled(p, &ca.mul_ref(cb));
            }
        }
        out
    }

    /// `π_r` as a Hochschild 2-cochain on the truncated view.
    pub fn pi_cochain(&self, r: usize) -> HochschildCochain<PbwMonomial> {
        let mut c = HochschildCochain::zero(2);
        for ((u, v), p) in &self.table {
            c.set(vec![u.clone(), v.clone()], p.t_coefficient(r)).expect("arity 2");
        }
        c
    }

    /// `π₀` agrees with the product of `env`.
    pub fn check_pi0(&self, env: &EnvelopingAlgebra) -> VerificationReport {
        let mut r = VerificationReport::new("order-0 product");
        for ((u, v), p) in &self.table {
            let expected = env.multiply(&UElement::basis(u.clone()), &UElement::basis(v.clone()));
            if p.t_coefficient(0) != expected {
                r.push("pi0", vec![u.render(&self.alg), v.render(&self.alg)], "π₀ differs from the product of U(g)");
            }
        }
        r
    }

    /// `Σ_s π_s(π_{r-s}(u, v), w) - π_s(u, π_{r-s}(v, w)) = 0` for all `r ≤ N` on tabulated triples.
    pub fn check_associativity(&self) -> VerificationReport {
        let mut report = VerificationReport::new("deformed associativity");
        let one = Series::constant(Scalar::one(), self.order);
        let triples: Vec<[&PbwMonomial; 3]> = self
            .basis
            .iter()
            .flat_map(|u| {
                self.basis.iter().flat_map(move |v| {
                    self.basis
                        .iter()
                        .filter(move |w| u.len() + v.len() + w.len() <= self.cutoff)
                        .map(move |w| [u, v, w])
                })
            })
            .collect();
        let bad: Vec<(String, usize)> = triples
            .par_iter()
            .filter_map(|[u, v, w]| {
                let lift = |m: &PbwMonomial| UElement::from_term(m.clone(), one.clone());
                let mut d = self.product_linear(&self.product_linear(&lift(u), &lift(v)), &lift(w));
                d.sub_assign(&self.product_linear(&lift(u), &self.product_linear(&lift(v), &lift(w))));
                let first = (0..=self.order).find(|&r| !d.t_coefficient(r).is_zero())?;
                Some((format!("{}|{}|{}", u.render(&self.alg), v.render(&self.alg), w.render(&self.alg)), first))
            })
            .collect();
        for (loc, r) in bad {
            report.push("associativity", vec![format!("t^{r}"), loc], "order-wise associativity defect");
        }
        report
    }

    /// `π₁` is a Hochschild 2-cocycle of `U(g)` on tuples of total length at most the cutoff.
    pub fn check_pi1_cocycle(&self, env: &EnvelopingAlgebra) -> VerificationReport {
        let view = TruncatedEnveloping::new(env, self.cutoff);
        let mut r = hochschild_cocycle_check(&view, &self.pi_cochain(1));
        r.check = "π₁ Hochschild cocycle".into();
        r
    }

    /// `π₁(x_i, x_j) - ε(g_i, g_j) π₁(x_j, x_i)` on a pair of generators.
    pub fn antisymmetrized_pi1(&self, i: usize, j: usize) -> UElement {
        let (a, b) = (PbwMonomial::generator(i), PbwMonomial::generator(j));
        let mut out = self.pi(1, &a, &b).unwrap_or_default();
        out.sub_assign(&self.pi(1, &b, &a).unwrap_or_default().scaled(self.alg.eps(i, j)));
        out
    }

    /// `μ₁(X, Y) = π₁(X, Y) - ε(X, Y) π₁(Y, X)` on all basis pairs.
    pub fn check_mu1_identity(&self, mu: &DeformedBracket) -> VerificationReport {
        let mut r = VerificationReport::new("μ₁ antisymmetrization");
        let n = self.alg.dim();
        let mu1 = if mu.order() >= 1 { mu.component(1).clone() } else { Cochain::zero(2, self.alg.group().identity()) };
        for i in 0..n {
            for j in 0..n {
                let expected: UElement = embed(&mu1.eval(&self.alg, &[i, j]));
                if self.order >= 1 && self.antisymmetrized_pi1(i, j) != expected {
                    r.push("identity", vec![self.alg.name(i).into(), self.alg.name(j).into()], "π₁ antisymmetrization ≠ μ₁");
                }
            }
        }
        r
    }

    /// `ω(X, Y)·1 = π₁(X, Y) - ε(X, Y) π₁(Y, X)` on all basis pairs.
    pub fn check_omega_identity(&self, omega: &Cochain) -> VerificationReport {
        let mut r = VerificationReport::new("ω antisymmetrization");
        let n = self.alg.dim();
        for i in 0..n {
            for j in 0..n {
                let w = omega.eval(&self.alg, &[i, j]).coeff(&0);
                let expected = UElement::from_term(PbwMonomial::unit(), w);
                if self.order >= 1 && self.antisymmetrized_pi1(i, j) != expected {
                    r.push("identity", vec![self.alg.name(i).into(), self.alg.name(j).into()], "π₁ antisymmetrization ≠ ω·1");
                }
            }
        }
        r
    }

    /// Decides whether `π₁ = δφ` for a degree-e linear map `φ` from monomials
    /// of length `≤ d` to `U_{≤ d}`, using the equations on all tabulated pairs.
    pub fn order_one_triviality(&self, env: &EnvelopingAlgebra) -> OrderOneTriviality {
        let alg = &self.alg;
        let basis = &self.basis;
        let index: BTreeMap<&PbwMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // unknowns φ(m) → n for equal degrees
        let mut vars: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, m) in basis.iter().enumerate() {
            let g = m.degree(alg);
            for (j, n) in basis.iter().enumerate() {
                if n.degree(alg) == g {
                    let k = vars.len();
                    vars.insert((i, j), k);
                }
            }
        }
        let rhs_col = vars.len();
        let targets: Vec<Vec<usize>> = (0..basis.len())
            .map(|i| vars.range((i, 0)..(i + 1, 0)).map(|(&(_, j), _)| j).collect())
            .collect();
        let mono = |m: &PbwMonomial| UElement::basis(m.clone());
        let mut echelon = SparseEchelon::new();
        let mut equations = 0usize;
        for (u, v) in self.table.keys() {
            let (iu, iv) = (index[u], index[v]);
            // row keyed by output monomial: Σ coefficient · var = π₁(u, v)
            let mut rows: BTreeMap<PbwMonomial, BTreeMap<usize, Scalar>> = BTreeMap::new();
            let add = |rows: &mut BTreeMap<PbwMonomial, BTreeMap<usize, Scalar>>, w: &UElement, var: usize, sign: &Scalar| {
                for (m, c) in w {
                    let e = rows.entry(m.clone()).or_default().entry(var).or_insert_with(Scalar::zero);
                    *e += &(c * sign);
                }
            };
            let plus = Scalar::one();
            let minus = -Scalar::one();
            for &j in &targets[iv] {
                add(&mut rows, &env.multiply(&mono(u), &mono(&basis[j])), vars[&(iv, j)], &plus);
            }
            for &j in &targets[iu] {
                add(&mut rows, &env.multiply(&mono(&basis[j]), &mono(v)), vars[&(iu, j)], &plus);
            }
            for (w, c) in &env.multiply(&mono(u), &mono(v)) {
                let iw = index[w];
                for &j in &targets[iw] {
                    add(&mut rows, &mono(&basis[j]), vars[&(iw, j)], &(c * &minus));
                }
            }
            for (m, c) in &self.pi(1, u, v).unwrap_or_default() {
                rows.entry(m.clone()).or_default().insert(rhs_col, c.clone());
            }
            for mut row in rows.into_values() {
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    equations += 1;
                    echelon.insert(row);
                }
            }
        }
        let trivial = !echelon.contains(BTreeMap::from([(rhs_col, Scalar::one())]));
        OrderOneTriviality { trivial, unknowns: vars.len(), equations, rank: echelon.rank() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderOneTriviality {
    /// `π₁` lies in the image of `δ_H` on the bounded space of `φ`.
    pub trivial: bool,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

/// Verdicts for a deformed product, as produced by the CLI `deform` and `central-extend` commands.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineChecks {
    pub pi0: VerificationReport,
    pub associativity: VerificationReport,
    pub hochschild: VerificationReport,
    pub antisymmetrization: VerificationReport,
}

impl PipelineChecks {
    pub fn is_valid(&self) -> bool {
        self.pi0.is_valid() && self.associativity.is_valid() && self.hochschild.is_valid() && self.antisymmetrization.is_valid()
    }

    pub fn reports(&self) -> [&VerificationReport; 4] {
        [&self.pi0, &self.associativity, &self.hochschild, &self.antisymmetrization]
    }
}

pub fn check_bracket_extension(pi: &DeformedMultiplication, mu: &DeformedBracket) -> PipelineChecks {
    let env = EnvelopingAlgebra::new(pi.algebra());
    PipelineChecks {
        pi0: pi.check_pi0(&env),
        associativity: pi.check_associativity(),
        hochschild: pi.check_pi1_cocycle(&env),
        antisymmetrization: pi.check_mu1_identity(mu),
    }
}

pub fn check_central_deformation(pi: &DeformedMultiplication, omega: &Cochain) -> PipelineChecks {
    let env = EnvelopingAlgebra::new(pi.algebra());
    PipelineChecks {
        pi0: pi.check_pi0(&env),
        associativity: pi.check_associativity(),
        hochschild: pi.check_pi1_cocycle(&env),
        antisymmetrization: pi.check_omega_identity(omega),
    }
}

/// A degree-e 2-cochain from `(i, j) ↦ value` on admissible pairs.
pub fn cochain_from_pairs(
    alg: &ColorLieAlgebra,
    module: &ModuleSpec,
    pairs: &[((usize, usize), ModuleVector)],
) -> Result<Cochain> {
    let mut c = Cochain::zero(2, alg.group().identity());
    for ((i, j), v) in pairs {
        let mut acc = c.eval(alg, &[*i, *j]);
        acc.add_assign(v);
        c.set(alg, &[*i, *j], acc)?;
    }
    c.validate(alg, module)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::is_graded_rigid;
    use crate::enveloping::render_u;
    use crate::fixtures;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    fn heisenberg_mu1() -> (ColorLieAlgebra, Cochain) {
        let h3 = fixtures::h3();
        let w = is_graded_rigid(&h3).witnesses;
        (h3, w[0].clone())
    }

    fn x_wedge_z(h3: &ColorLieAlgebra) -> Cochain {
        cochain_from_pairs(h3, &ModuleSpec::Trivial, &[((0, 2), ModuleVector::basis(0))]).unwrap()
    }

    #[test]
    fn undeformed_has_no_defects() {
        let sl2 = fixtures::sl2();
        assert!(deformation_jacobi_defects(&sl2, &DeformedBracket::undeformed(&sl2, 2)).unwrap().is_empty());
    }

    #[test]
    fn order_one_defect_tracks_cocycle_condition() {
        let (h3, mu1) = heisenberg_mu1();
        let mu = DeformedBracket::new(&h3, vec![mu1], 1).unwrap();
        assert!(deformation_jacobi_defects(&h3, &mu).unwrap().is_empty());
        let sl2 = fixtures::sl2();
        // μ₁(e, f) = e is not a cocycle
        let bad = cochain_from_pairs(&sl2, &ModuleSpec::Adjoint, &[((0, 1), ModuleVector::basis(0))]).unwrap();
        assert!(!delta_ce(&sl2, &ModuleSpec::Adjoint, &bad).unwrap().is_zero());
        let defects = deformation_jacobi_defects(&sl2, &DeformedBracket::new(&sl2, vec![bad], 1).unwrap()).unwrap();
        assert!(defects.iter().any(|d| d.order == 1));
    }

    #[test]
    fn coboundary_is_transported_away() {
        let sl2 = fixtures::sl2();
        let e = sl2.group().identity();
        let mut f1 = Cochain::zero(1, e.clone());
        f1.set(&sl2, &[0], ModuleVector::basis(0)).unwrap();
        f1.set(&sl2, &[2], ModuleVector::from_term(1, int(3))).unwrap();
        let mu1 = delta_ce(&sl2, &ModuleSpec::Adjoint, &f1).unwrap();
        let mu = DeformedBracket::new(&sl2, vec![mu1], 2).unwrap();
        let moved = equivalence_transform(&sl2, &mu, &[f1.clone()]).unwrap();
        assert!(moved.component(1).is_zero());
        assert_eq!(equivalence_transform(&sl2, &mu, &[]).unwrap(), mu);
    }

    #[test]
    fn extension_of_heisenberg_by_x_wedge_z() {
        let h3 = fixtures::h3();
        let ext = central_extension(&h3, &x_wedge_z(&h3)).unwrap();
        let a = &ext.algebra;
        assert_eq!(a.dim(), 4);
        assert_eq!(a.render_vector(a.bracket_basis(1, 2)), "z");
        assert_eq!(a.render_vector(a.bracket_basis(1, 3)), "c");
        assert!(!central_class_is_zero(&h3, &x_wedge_z(&h3)).unwrap());
        let bad = cochain_from_pairs(&h3, &ModuleSpec::Trivial, &[((0, 1), ModuleVector::basis(0))]).unwrap();
        assert!(central_extension(&h3, &bad).is_ok());
        assert!(central_class_is_zero(&h3, &bad).unwrap());
    }

    #[test]
    fn heisenberg_pipeline() {
        let (h3, mu1) = heisenberg_mu1();
        let mu = DeformedBracket::new(&h3, vec![mu1], 2).unwrap();
        let pi = extend_deformation_to_u(&h3, &mu, 3).unwrap();
        let checks = check_bracket_extension(&pi, &mu);
        for r in checks.reports() {
            assert!(r.is_valid(), "{r}");
        }
    }

    #[test]
    fn oscillator_relation() {
        let h3 = fixtures::h3();
        let omega = x_wedge_z(&h3);
        let pi = central_extension_deformation(&h3, &omega, 3, 1).unwrap();
        assert_eq!(render_u(&h3, &pi.antisymmetrized_pi1(0, 2)), "1");
        assert!(check_central_deformation(&pi, &omega).is_valid());
        let env = EnvelopingAlgebra::new(&h3);
        assert!(!pi.order_one_triviality(&env).trivial);
    }

    #[test]
    fn coboundary_deformation_is_trivial_at_order_one() {
        // ω = x*∧y* = -δz* on h3 has zero class; the deformed product is trivial
        let h3 = fixtures::h3();
        let omega = cochain_from_pairs(&h3, &ModuleSpec::Trivial, &[((0, 1), ModuleVector::basis(0))]).unwrap();
        let pi = central_extension_deformation(&h3, &omega, 2, 1).unwrap();
        let env = EnvelopingAlgebra::new(&h3);
        assert!(pi.order_one_triviality(&env).trivial);
    }
}
