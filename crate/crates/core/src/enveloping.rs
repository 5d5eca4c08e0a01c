//! `U(g)` in PBW normal form.
//!
//! Elements are combinations of ordered monomials `y_{k₁} ⋯ y_{k_p}` with
//! `k₁ ≤ … ≤ k_p`, strict at odd indices. A word is normalised by rewriting
//! its leftmost disorder with
//!
//! ```text
//! y_a y_b = ε(g_a, g_b) y_b y_a + [x_a, x_b]      (a > b)
//! y_a y_a = ½ [x_a, x_a]                           (ε(g_a, g_a) = -1)
//! ```
//!
//! The bracket may be replaced by any t-dependent family (see
//! [`EnvelopingAlgebra::from_relations`]), which is how deformed products are
//! computed with the same engine.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde::Serialize;

use crate::algebra::{ColorLieAlgebra, GradedVector, Homogeneity};
use crate::error::{Error, Result};
use crate::expr::{parse_expression, render_terms};
use crate::grading::GroupElement;
use crate::lincomb::{Coefficient, LinComb, Series};
use crate::scalar::Scalar;

/// An ordered monomial, stored as its index sequence. The empty monomial is `1`.
///
/// Monomials order by decreasing length, then lexicographically, so that
/// leading terms come first when printing.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct PbwMonomial(Vec<usize>);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Wraps an index sequence without checking admissibility.
    pub fn from_indices(indices: Vec<usize>) -> Self {
        PbwMonomial(indices)
    }

    pub fn generator(i: usize) -> Self {
        PbwMonomial(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self, alg: &ColorLieAlgebra) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !alg.is_odd(w[0])))
            && self.0.iter().all(|&i| i < alg.dim())
    }

    pub fn degree(&self, alg: &ColorLieAlgebra) -> GroupElement {
        let g = alg.group();
        self.0.iter().fold(g.identity(), |acc, &i| g.compose_unchecked(&acc, alg.degree(i)))
    }

    pub fn render(&self, alg: &ColorLieAlgebra) -> String {
        self.0.iter().map(|&i| alg.name(i)).collect::<Vec<_>>().join("*")
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{:?}", self.0)
    }
}

pub type UElement<C = Scalar> = LinComb<PbwMonomial, C>;

/// Highest monomial length, `None` for zero.
pub fn filtration_degree<C: Coefficient>(u: &UElement<C>) -> Option<usize> {
    u.keys().next().map(PbwMonomial::len)
}

pub fn u_homogeneity<C: Coefficient>(alg: &ColorLieAlgebra, u: &UElement<C>) -> Homogeneity {
    let mut degrees = u.keys().map(|m| m.degree(alg));
    match degrees.next() {
        None => Homogeneity::Zero,
        Some(g) => {
            if degrees.all(|h| h == g) {
                Homogeneity::Homogeneous(g)
            } else {
                Homogeneity::Inhomogeneous
            }
        }
    }
}

/// The component of `u` in `gr_n U(g)`; errors when `u` has filtration degree above `n`.
pub fn gr_project(u: &UElement, n: usize) -> Result<crate::poisson::SymElement> {
    if let Some(found) = filtration_degree(u) {
        if found > n {
            return Err(Error::FiltrationExceeded { found, max: n });
        }
    }
    Ok(u.filter_keys(|m| m.len() == n))
}

/// The Lie algebra vector `v` as an element of filtration degree one.
pub fn embed<C: Coefficient>(v: &GradedVector) -> UElement<C> {
    v.iter().map(|(&i, c)| (PbwMonomial::generator(i), C::from_scalar(c.clone()))).collect()
}

pub fn lift_constant(u: &UElement<Scalar>) -> UElement<Series> {
    u.iter().map(|(m, c)| (m.clone(), Series::from_scalar(c.clone()))).collect()
}

/// All admissible monomials of length at most `d`, by increasing length.
pub fn pbw_basis_enumerate(alg: &ColorLieAlgebra, d: usize) -> Vec<PbwMonomial> {
    fn rec(alg: &ColorLieAlgebra, len: usize, cur: &mut Vec<usize>, out: &mut Vec<PbwMonomial>) {
        if cur.len() == len {
            out.push(PbwMonomial(cur.clone()));
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&l) if alg.is_odd(l) => l + 1,
            Some(&l) => l,
        };
        for i in start..alg.dim() {
            cur.push(i);
            rec(alg, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 0..=d {
        rec(alg, len, &mut Vec::new(), &mut out);
    }
    out
}

/// `U(g)` (or a deformation of it) with a shared cache of normalised words.
pub struct EnvelopingAlgebra<C: Coefficient = Scalar> {
    alg: ColorLieAlgebra,
    // relations[a][b] = deformed [x_a, x_b] as an element of U
    relations: Vec<Vec<UElement<C>>>,
    swap: Vec<Vec<C>>,
    half: C,
    cache: RwLock<HashMap<Vec<usize>, UElement<C>>>,
}

impl EnvelopingAlgebra<Scalar> {
    pub fn new(alg: &ColorLieAlgebra) -> Self {
        let n = alg.dim();
        let relations = (0..n).map(|a| (0..n).map(|b| embed(alg.bracket_basis(a, b))).collect()).collect();
        Self::from_relations(alg, relations).expect("bracket of a valid algebra")
    }
}

impl<C: Coefficient> EnvelopingAlgebra<C> {
    /// Uses `relations[a][b]` in place of `[x_a, x_b]` when rewriting.
    ///
    /// Only entries with `a > b`, and `a = b` at odd indices, are read. An even
    /// diagonal entry must vanish.
    pub fn from_relations(alg: &ColorLieAlgebra, relations: Vec<Vec<UElement<C>>>) -> Result<Self> {
        let n = alg.dim();
        if relations.len() != n || relations.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("relation table must be {n}×{n}")));
        }
        for (a, row) in relations.iter().enumerate() {
            if !alg.is_odd(a) && !row[a].is_zero() {
                return Err(Error::InvalidAlgebra({
                    let mut r = crate::report::VerificationReport::new("relations");
                    r.push("antisymmetry", vec![alg.name(a).into(), alg.name(a).into()], "even square must vanish");
                    r
                }));
            }
        }
        let swap = (0..n).map(|a| (0..n).map(|b| C::from_scalar(alg.eps(a, b).clone())).collect()).collect();
        Ok(EnvelopingAlgebra {
            alg: alg.clone(),
            relations,
            swap,
            half: C::from_scalar(Scalar::from_ratio(1, 2)),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &ColorLieAlgebra {
        &self.alg
    }

    pub fn one(&self) -> UElement<C> {
        UElement::basis(PbwMonomial::unit())
    }

    pub fn generator(&self, i: usize) -> UElement<C> {
        UElement::basis(PbwMonomial::generator(i))
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.alg.dim()) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i, dim: self.alg.dim() }),
            None => Ok(()),
        }
    }

    /// Normal form of `coeff · y_{w₁} ⋯ y_{w_k}`.
    pub fn pbw_normal_form(&self, word: &[usize], coeff: C) -> Result<UElement<C>> {
        self.check_word(word)?;
        Ok(self.normal_word(word).scaled(&coeff))
    }

    fn normal_word(&self, word: &[usize]) -> UElement<C> {
        let disorder = word
            .windows(2)
            .position(|w| w[0] > w[1] || (w[0] == w[1] && self.alg.is_odd(w[0])));
        let Some(p) = disorder else {
            return UElement::basis(PbwMonomial(word.to_vec()));
        };
        if let Some(hit) = self.cache.read().expect("cache lock").get(word) {
            return hit.clone();
        }
        let (a, b) = (word[p], word[p + 1]);
        let mut out = UElement::zero();
        let mut buf = Vec::with_capacity(word.len());
        if a != b {
            buf.extend_from_slice(word);
            buf.swap(p, p + 1);
            out.add_scaled(&self.normal_word(&buf), &self.swap[a][b]);
        }
        for (m, c) in &self.relations[a][b] {
            buf.clear();
            buf.extend_from_slice(&word[..p]);
            buf.extend_from_slice(m.indices());
            buf.extend_from_slice(&word[p + 2..]);
            let c = if a == b { self.half.mul_ref(c) } else { c.clone() };
            out.add_scaled(&self.normal_word(&buf), &c);
        }
        self.cache.write().expect("cache lock").insert(word.to_vec(), out.clone());
        out
    }

    pub fn multiply(&self, u: &UElement<C>, v: &UElement<C>) -> UElement<C> {
        let mut out = UElement::zero();
        let mut word = Vec::new();
        for (m, a) in u {
            for (n, b) in v {
                let c = a.mul_ref(b);
                if c.is_zero() {
                    continue;
                }
                word.clear();
                word.extend_from_slice(m.indices());
                word.extend_from_slice(n.indices());
                out.add_scaled(&self.normal_word(&word), &c);
            }
        }
        out
    }

    /// `u v - ε(|u|, |v|) v u` for homogeneous `u`, `v`.
    pub fn commutator(&self, u: &UElement<C>, v: &UElement<C>) -> Result<UElement<C>> {
        let (gu, gv) = match (u_homogeneity(&self.alg, u), u_homogeneity(&self.alg, v)) {
            (Homogeneity::Zero, _) | (_, Homogeneity::Zero) => return Ok(UElement::zero()),
            (Homogeneity::Homogeneous(a), Homogeneity::Homogeneous(b)) => (a, b),
            _ => return Err(Error::Inhomogeneous("commutator arguments must be homogeneous".into())),
        };
        let mut out = self.multiply(u, v);
        out.sub_assign(&self.multiply(v, u).scaled(&C::from_scalar(self.alg.eps_degrees(&gu, &gv))));
        Ok(out)
    }

    /// Parses a sum of words in the basis names and normalises it.
    pub fn parse(&self, s: &str) -> Result<UElement<C>> {
        let mut out = UElement::zero();
        for (c, names) in parse_expression(s, self.alg.bicharacter_conductor())? {
            let word = self.alg.word_indices(&names)?;
            out.add_scaled(&self.normal_word(&word), &C::from_scalar(c));
        }
        Ok(out)
    }
}

/// Normal form in undeformed `U(g)`.
pub fn pbw_normal_form(alg: &ColorLieAlgebra, word: &[usize], coeff: Scalar) -> Result<UElement> {
    EnvelopingAlgebra::new(alg).pbw_normal_form(word, coeff)
}

pub fn u_multiply<C: Coefficient>(env: &EnvelopingAlgebra<C>, u: &UElement<C>, v: &UElement<C>) -> UElement<C> {
    env.multiply(u, v)
}

pub fn render_u(alg: &ColorLieAlgebra, u: &UElement) -> String {
    render_terms(u.iter().map(|(m, c)| (0, m.render(alg), c.clone())))
}

/// Renders a t-series element as `Σ_k t^k (…)`, lowest powers of `t` first.
pub fn render_u_series(alg: &ColorLieAlgebra, u: &UElement<Series>) -> String {
    let top = u.iter().filter_map(|(_, c)| c.degree()).max().unwrap_or(0);
    let terms = (0..=top).flat_map(|k| u.iter().map(move |(m, c)| (k, m.render(alg), c.coeff(k))));
    render_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    #[test]
    fn sl2_reorders() {
        let sl2 = fixtures::sl2();
        let u = pbw_normal_form(&sl2, &[1, 0], Scalar::one()).unwrap();
        assert_eq!(render_u(&sl2, &u), "e*f - h");
        let ordered = pbw_normal_form(&sl2, &[0, 1, 2], int(5)).unwrap();
        assert_eq!(ordered, UElement::from_term(PbwMonomial(vec![0, 1, 2]), int(5)));
        assert!(pbw_normal_form(&sl2, &[0, 7], Scalar::one()).is_err());
    }

    #[test]
    fn super_square() {
        let s = fixtures::super_line();
        let u = pbw_normal_form(&s, &[0, 0], Scalar::one()).unwrap();
        assert_eq!(render_u(&s, &u), "(1/2) z");
    }

    #[test]
    fn heisenberg_product() {
        let h3 = fixtures::h3();
        let env = EnvelopingAlgebra::new(&h3);
        let yx = env.multiply(&env.generator(1), &env.generator(0));
        assert_eq!(render_u(&h3, &yx), "x*y - z");
        let one = env.one();
        assert_eq!(env.multiply(&one, &yx), yx);
    }

    #[test]
    fn associativity_on_generators() {
        for (name, alg) in fixtures::all() {
            let env = EnvelopingAlgebra::new(&alg);
            let n = alg.dim();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let (x, y, z) = (env.generator(a), env.generator(b), env.generator(c));
                        let l = env.multiply(&env.multiply(&x, &y), &z);
                        let r = env.multiply(&x, &env.multiply(&y, &z));
                        assert_eq!(l, r, "{name} ({a},{b},{c})");
                        assert!(l.keys().all(|m| m.is_admissible(&alg)));
                    }
                }
            }
        }
    }

    #[test]
    fn basis_counts() {
        let h3 = fixtures::h3();
        assert_eq!(pbw_basis_enumerate(&h3, 2).len(), 1 + 3 + 6);
        assert_eq!(pbw_basis_enumerate(&h3, 0), vec![PbwMonomial::unit()]);
        let s = fixtures::super_line();
        let len2: Vec<_> = pbw_basis_enumerate(&s, 2).into_iter().filter(|m| m.len() == 2).collect();
        assert_eq!(len2, vec![PbwMonomial(vec![0, 1]), PbwMonomial(vec![1, 1])]);
    }

    #[test]
    fn series_relations_truncate() {
        let a2 = fixtures::abelian2();
        let unit = |c: Series| UElement::from_term(PbwMonomial::unit(), c);
        let mut rel = vec![vec![UElement::<Series>::zero(); 2]; 2];
        // y x = x y + t·1
        rel[1][0] = unit(Series::monomial(Scalar::one(), 1, 2));
        let env = EnvelopingAlgebra::from_relations(&a2, rel).unwrap();
        let u = env.pbw_normal_form(&[1, 0], Series::constant(Scalar::one(), 2)).unwrap();
        assert_eq!(render_u_series(&a2, &u), "x*y + t");
        let u = env.pbw_normal_form(&[1, 1, 0, 0], Series::constant(Scalar::one(), 2)).unwrap();
        assert_eq!(render_u_series(&a2, &u), "x*x*y*y + 4 t x*y + 2 t^2");
    }
}
