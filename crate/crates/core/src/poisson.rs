//! The associated graded algebra `gr U(g)` as a color Poisson algebra, the
//! symmetrization map `gr U(g) → U(g)` and the star product it induces.
//!
//! Elements of `gr U(g)` use the same admissible monomials as `U(g)`; the
//! product is ε-commutative and squares of odd generators vanish.

use std::collections::BTreeMap;

use crate::algebra::Homogeneity;
use crate::enveloping::{filtration_degree, u_homogeneity, EnvelopingAlgebra, PbwMonomial, UElement};
use crate::error::{Error, Result};
use crate::expr::{parse_expression, render_terms};
use crate::grading::GroupElement;
use crate::lincomb::LinComb;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::ColorLieAlgebra;

pub type SymElement = LinComb<PbwMonomial>;

/// Product of two symmetric monomials with its ε-sign, or `None` when an odd generator repeats.
pub fn sym_monomial_product(alg: &ColorLieAlgebra, a: &PbwMonomial, b: &PbwMonomial) -> Option<(PbwMonomial, Scalar)> {
    let (a, b) = (a.indices(), b.indices());
    let mut sign = Scalar::one();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for &y in b {
        while i < a.len() && a[i] <= y {
            if a[i] == y && alg.is_odd(y) {
                return None;
            }
            out.push(a[i]);
            i += 1;
        }
        // y moves left past every remaining entry of a
        for &x in &a[i..] {
            sign = &sign * alg.eps(x, y);
        }
        out.push(y);
    }
    out.extend_from_slice(&a[i..]);
    Some((PbwMonomial::from_indices(out), sign))
}

pub fn sym_multiply(alg: &ColorLieAlgebra, u: &SymElement, v: &SymElement) -> SymElement {
    let mut out = SymElement::zero();
    for (m, a) in u {
        for (n, b) in v {
            if let Some((p, s)) = sym_monomial_product(alg, m, n) {
                out.add_term(p, &(a * b) * &s);
            }
        }
    }
    out
}

/// Common gr-degree and G-degree, or `None` for zero; errors on inhomogeneous input.
pub fn sym_bidegree(alg: &ColorLieAlgebra, u: &SymElement) -> Result<Option<(usize, GroupElement)>> {
    let mut lens = u.keys().map(PbwMonomial::len);
    let Some(p) = lens.next() else { return Ok(None) };
    if lens.any(|l| l != p) {
        return Err(Error::Inhomogeneous("element mixes gr-degrees".into()));
    }
    match u_homogeneity(alg, u) {
        Homogeneity::Homogeneous(g) => Ok(Some((p, g))),
        Homogeneity::Zero => Ok(None),
        Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous("element mixes G-degrees".into())),
    }
}

/// `{û, v̂} = π_{p+q-1}(uv - ε(|u|, |v|) vu)` with the monomials themselves as lifts.
pub fn poisson_bracket(env: &EnvelopingAlgebra, u: &SymElement, v: &SymElement) -> Result<SymElement> {
    let alg = env.algebra();
    let (Some((p, _)), Some((q, _))) = (sym_bidegree(alg, u)?, sym_bidegree(alg, v)?) else {
        return Ok(SymElement::zero());
    };
    poisson_of_lifts(env, u, v, p, q)
}

/// The bracket computed from arbitrary lifts of gr-degrees `p` and `q`.
pub fn poisson_of_lifts(env: &EnvelopingAlgebra, u: &UElement, v: &UElement, p: usize, q: usize) -> Result<SymElement> {
    if p + q == 0 {
        return Ok(SymElement::zero());
    }
    let c = env.commutator(u, v)?;
    crate::enveloping::gr_project(&c, p + q - 1)
}

fn eps_of(alg: &ColorLieAlgebra, a: &SymElement, b: &SymElement) -> Result<Scalar> {
    match (sym_bidegree(alg, a)?, sym_bidegree(alg, b)?) {
        (Some((_, g)), Some((_, h))) => Ok(alg.eps_degrees(&g, &h)),
        _ => Ok(Scalar::one()),
    }
}

/// `{a, b} + ε(|a|, |b|) {b, a}`.
pub fn antisymmetry_defect(env: &EnvelopingAlgebra, a: &SymElement, b: &SymElement) -> Result<SymElement> {
    let mut d = poisson_bracket(env, a, b)?;
    d.add_assign(&poisson_bracket(env, b, a)?.scaled(&eps_of(env.algebra(), a, b)?));
    Ok(d)
}

/// `ε(|c|,|a|){a,{b,c}} + ε(|a|,|b|){b,{c,a}} + ε(|b|,|c|){c,{a,b}}`.
pub fn jacobi_defect(env: &EnvelopingAlgebra, a: &SymElement, b: &SymElement, c: &SymElement) -> Result<SymElement> {
    let alg = env.algebra();
    let term = |x: &SymElement, y: &SymElement, z: &SymElement| -> Result<SymElement> {
        Ok(poisson_bracket(env, x, &poisson_bracket(env, y, z)?)?.scaled(&eps_of(alg, z, x)?))
    };
    let mut d = term(a, b, c)?;
    d.add_assign(&term(b, c, a)?);
    d.add_assign(&term(c, a, b)?);
    Ok(d)
}

/// `{a, bc} - {a, b} c - ε(|a|, |b|) b {a, c}`.
pub fn leibniz_defect(env: &EnvelopingAlgebra, a: &SymElement, b: &SymElement, c: &SymElement) -> Result<SymElement> {
    let alg = env.algebra();
    let mut d = poisson_bracket(env, a, &sym_multiply(alg, b, c))?;
    d.sub_assign(&sym_multiply(alg, &poisson_bracket(env, a, b)?, c));
    d.sub_assign(&sym_multiply(alg, b, &poisson_bracket(env, a, c)?).scaled(&eps_of(alg, a, b)?));
    Ok(d)
}

/// Checks antisymmetry, Jacobi and Leibniz for `{ , }` on all triples of
/// monomials of positive length whose lengths sum to at most `max_total`
/// (generators are always included).
pub fn verify_color_poisson(env: &EnvelopingAlgebra, max_total: usize) -> VerificationReport {
    let alg = env.algebra();
    let mut report = VerificationReport::new("color Poisson");
    let max_total = max_total.max(3);
    let monos: Vec<PbwMonomial> = crate::enveloping::pbw_basis_enumerate(alg, max_total - 2)
        .into_iter()
        .filter(|m| !m.is_unit())
        .collect();
    let render = |m: &PbwMonomial| m.render(alg);
    let basis = |m: &PbwMonomial| SymElement::basis(m.clone());
    for a in &monos {
        for b in monos.iter().filter(|b| a.len() + b.len() < max_total) {
            let d = antisymmetry_defect(env, &basis(a), &basis(b)).expect("monomials are homogeneous");
            if !d.is_zero() {
                report.push("antisymmetry", vec![render(a), render(b)], format!("defect {}", render_sym(alg, &d)));
            }
            for c in monos.iter().filter(|c| a.len() + b.len() + c.len() <= max_total) {
                let (x, y, z) = (basis(a), basis(b), basis(c));
                let j = jacobi_defect(env, &x, &y, &z).expect("monomials are homogeneous");
                if !j.is_zero() {
                    report.push("jacobi", vec![render(a), render(b), render(c)], format!("defect {}", render_sym(alg, &j)));
                }
                let l = leibniz_defect(env, &x, &y, &z).expect("monomials are homogeneous");
                if !l.is_zero() {
                    report.push("leibniz", vec![render(a), render(b), render(c)], format!("defect {}", render_sym(alg, &l)));
                }
            }
        }
    }
    report
}

/// Weighted sum over permutations: `(1/p!) Σ_σ ∏_{inversions} ε(|X_r|, |X_s|) X_σ(1) ⋯ X_σ(p)`.
pub fn symmetrize(env: &EnvelopingAlgebra, s: &SymElement) -> UElement {
    let alg = env.algebra();
    let mut out = UElement::zero();
    for (m, c) in s {
        let xs = m.indices();
        let p = xs.len();
        let mut acc = UElement::zero();
        for perm in permutations(p) {
            // perm[k] = position r placed k-th; (r, s) with r < s is inverted when s comes first
            let mut w = Scalar::one();
            for k in 0..p {
                for l in k + 1..p {
                    if perm[k] > perm[l] {
                        w = &w * alg.eps(xs[perm[l]], xs[perm[k]]);
                    }
                }
            }
            let word: Vec<usize> = perm.iter().map(|&r| xs[r]).collect();
            acc.add_assign(&env.pbw_normal_form(&word, w).expect("indices of an admissible monomial"));
        }
        out.add_scaled(&acc, &(c * &factorial_inv(p)));
    }
    out
}

fn factorial_inv(p: usize) -> Scalar {
    let f: i64 = (1..=p as i64).product();
    Scalar::from_ratio(1, f)
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    fn rec(p: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in 0..p {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(p, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(p, &mut Vec::new(), &mut vec![false; p], &mut out);
    out
}

/// Components `s_j` with `u = Σ_j symmetrize(s_j)`, indexed by gr-degree.
pub fn symmetrize_inverse(env: &EnvelopingAlgebra, u: &UElement) -> Vec<SymElement> {
    let Some(top) = filtration_degree(u) else { return Vec::new() };
    let mut parts = vec![SymElement::zero(); top + 1];
    let mut rest = u.clone();
    while let Some(p) = filtration_degree(&rest) {
        let s = rest.filter_keys(|m| m.len() == p);
        rest.sub_assign(&symmetrize(env, &s));
        debug_assert!(filtration_degree(&rest).is_none_or(|q| q < p));
        parts[p] = s;
    }
    parts
}

/// `u ⋆ v` truncated at `t^{order}`; `components[n]` is the coefficient of `t^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarSeries {
    pub order: usize,
    pub components: Vec<SymElement>,
}

impl StarSeries {
    pub fn component(&self, n: usize) -> SymElement {
        self.components.get(n).cloned().unwrap_or_default()
    }

    /// `(Σ t^i a_i) ⋆ (Σ t^j b_j)` truncated at the smaller order.
    pub fn multiply(&self, env: &EnvelopingAlgebra, other: &StarSeries) -> StarSeries {
        let order = self.order.min(other.order);
        let mut components = vec![SymElement::zero(); order + 1];
        for (i, a) in self.components.iter().enumerate().take(order + 1) {
            for (j, b) in other.components.iter().enumerate().take(order + 1 - i) {
                for (n, c) in star_components(env, a, b).into_iter().enumerate() {
                    if i + j + n <= order {
                        components[i + j + n].add_assign(&c);
                    }
                }
            }
        }
        StarSeries { order, components }
    }

    pub fn constant(s: SymElement, order: usize) -> StarSeries {
        let mut components = vec![SymElement::zero(); order + 1];
        components[0] = s;
        StarSeries { order, components }
    }
}

fn split_by_length(u: &SymElement) -> BTreeMap<usize, SymElement> {
    let mut out: BTreeMap<usize, SymElement> = BTreeMap::new();
    for (m, c) in u {
        out.entry(m.len()).or_default().add_term(m.clone(), c.clone());
    }
    out
}

/// All coefficients of `u ⋆ v`, through `t^{p+q}`, without truncation.
pub fn star_components(env: &EnvelopingAlgebra, u: &SymElement, v: &SymElement) -> Vec<SymElement> {
    let mut out: Vec<SymElement> = Vec::new();
    for (p, up) in split_by_length(u) {
        let su = symmetrize(env, &up);
        for (q, vq) in split_by_length(v) {
            let w = env.multiply(&su, &symmetrize(env, &vq));
            let parts = symmetrize_inverse(env, &w);
            if out.len() < p + q + 1 {
                out.resize(p + q + 1, SymElement::zero());
            }
            for (j, s) in parts.into_iter().enumerate() {
                out[p + q - j].add_assign(&s);
            }
        }
    }
    out
}

pub fn star_product(env: &EnvelopingAlgebra, u: &SymElement, v: &SymElement, order: usize) -> StarSeries {
    let mut components = star_components(env, u, v);
    components.resize(order + 1, SymElement::zero());
    StarSeries { order, components }
}

pub fn render_sym(alg: &ColorLieAlgebra, s: &SymElement) -> String {
    render_terms(s.iter().map(|(m, c)| (0, m.render(alg), c.clone())))
}

pub fn render_star(alg: &ColorLieAlgebra, s: &StarSeries) -> String {
    render_terms(
        s.components
            .iter()
            .enumerate()
            .flat_map(|(n, c)| c.iter().map(move |(m, v)| (n, m.render(alg), v.clone()))),
    )
}

/// Parses a sum of products of generators into `gr U(g)`.
pub fn parse_sym(alg: &ColorLieAlgebra, s: &str) -> Result<SymElement> {
    let mut out = SymElement::zero();
    for (c, names) in parse_expression(s, alg.bicharacter_conductor())? {
        let mut term = SymElement::from_term(PbwMonomial::unit(), c);
        for i in alg.word_indices(&names)? {
            term = sym_multiply(alg, &term, &SymElement::basis(PbwMonomial::generator(i)));
        }
        out.add_assign(&term);
    }
    Ok(out)
}
