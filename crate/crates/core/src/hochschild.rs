//! Hochschild cochains on associative algebras and their differential
//!
//! ```text
//! (δf)(a₀, …, a_p) = a₀ f(a₁, …, a_p)
//!                  + Σ_{i<p} (-1)^{i+1} f(a₀, …, a_i a_{i+1}, …, a_p)
//!                  + (-1)^{p+1} f(a₀, …, a_{p-1}) a_p
//! ```
//!
//! Cochains are given by their values on basis tuples. For `U(g)` the view
//! restricts arguments to tuples of PBW monomials of total length at most `d`;
//! values are not truncated, so `δ(δf) = 0` holds exactly on the restricted
//! domain.

use std::collections::BTreeMap;
use std::fmt::Debug;

use rayon::prelude::*;

use crate::enveloping::{pbw_basis_enumerate, EnvelopingAlgebra, PbwMonomial, UElement};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::report::VerificationReport;
use crate::scalar::Scalar;

pub trait AssociativeAlgebraView: Sync {
    type Basis: Ord + Clone + Debug + Send + Sync;

    /// Basis tuples of length `p` on which cochains are evaluated.
    fn argument_tuples(&self, p: usize) -> Vec<Vec<Self::Basis>>;

    fn multiply_basis(&self, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;

    fn render_basis(&self, b: &Self::Basis) -> String;

    fn multiply(&self, u: &LinComb<Self::Basis>, v: &LinComb<Self::Basis>) -> LinComb<Self::Basis> {
        let mut out = LinComb::zero();
        for (a, ca) in u {
            for (b, cb) in v {
                out.add_scaled(&self.multiply_basis(a, b), &(ca * cb));
            }
        }
        out
    }
}

/// `U(g)` with cochain arguments restricted to total PBW length `≤ max_len`.
pub struct TruncatedEnveloping<'a> {
    env: &'a EnvelopingAlgebra,
    max_len: usize,
    basis: Vec<PbwMonomial>,
}

impl<'a> TruncatedEnveloping<'a> {
    pub fn new(env: &'a EnvelopingAlgebra, max_len: usize) -> Self {
        TruncatedEnveloping { env, max_len, basis: pbw_basis_enumerate(env.algebra(), max_len) }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn basis(&self) -> &[PbwMonomial] {
        &self.basis
    }

    pub fn enveloping(&self) -> &EnvelopingAlgebra {
        self.env
    }
}

impl AssociativeAlgebraView for TruncatedEnveloping<'_> {
    type Basis = PbwMonomial;

    fn argument_tuples(&self, p: usize) -> Vec<Vec<PbwMonomial>> {
        fn rec(view: &TruncatedEnveloping, p: usize, budget: usize, cur: &mut Vec<PbwMonomial>, out: &mut Vec<Vec<PbwMonomial>>) {
            if cur.len() == p {
                out.push(cur.clone());
                return;
            }
            for m in view.basis.iter().filter(|m| m.len() <= budget) {
                cur.push(m.clone());
                rec(view, p, budget - m.len(), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, p, self.max_len, &mut Vec::new(), &mut out);
        out
    }

    fn multiply_basis(&self, a: &PbwMonomial, b: &PbwMonomial) -> UElement {
        self.env.multiply(&UElement::basis(a.clone()), &UElement::basis(b.clone()))
    }

    fn render_basis(&self, b: &PbwMonomial) -> String {
        if b.is_unit() {
            "1".into()
        } else {
            b.render(self.env.algebra())
        }
    }
}

/// A finite-dimensional associative algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    // table[a][b] = e_a e_b
    table: Vec<Vec<LinComb<usize>>>,
}

impl FiniteAlgebra {
    pub fn new(names: Vec<String>, table: Vec<Vec<LinComb<usize>>>) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("multiplication table must be {n}×{n}")));
        }
        let alg = FiniteAlgebra { names, table };
        let report = alg.verify_associativity();
        if report.is_valid() {
            Ok(alg)
        } else {
            Err(Error::Parse { context: "associative algebra".into(), message: report.to_string() })
        }
    }

    /// The matrix algebra `M_n(K)` on the units `E_ij` (index `i·n + j`).
    pub fn matrices(n: usize) -> Self {
        let names = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        let mut table = vec![vec![LinComb::zero(); n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[i * n + j][j * n + l] = LinComb::basis(i * n + l);
                }
            }
        }
        FiniteAlgebra { names, table }
    }

    /// Upper triangular 2×2 matrices on `E11, E12, E22`.
    pub fn upper_triangular_2x2() -> Self {
        let names = vec!["E11".into(), "E12".into(), "E22".into()];
        let mut table = vec![vec![LinComb::zero(); 3]; 3];
        table[0][0] = LinComb::basis(0);
        table[0][1] = LinComb::basis(1);
        table[1][2] = LinComb::basis(1);
        table[2][2] = LinComb::basis(2);
        FiniteAlgebra { names, table }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn verify_associativity(&self) -> VerificationReport {
        let mut report = VerificationReport::new("associativity");
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = self.multiply(&self.table[a][b], &LinComb::basis(c));
                    let r = self.multiply(&LinComb::basis(a), &self.table[b][c]);
                    if l != r {
                        report.push(
                            "associativity",
                            vec![self.names[a].clone(), self.names[b].clone(), self.names[c].clone()],
                            "(ab)c ≠ a(bc)",
                        );
                    }
                }
            }
        }
        report
    }
}

impl AssociativeAlgebraView for FiniteAlgebra {
    type Basis = usize;

    fn argument_tuples(&self, p: usize) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut out = vec![Vec::new()];
        for _ in 0..p {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..n).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn multiply_basis(&self, a: &usize, b: &usize) -> LinComb<usize> {
        self.table[*a][*b].clone()
    }

    fn render_basis(&self, b: &usize) -> String {
        self.names[*b].clone()
    }
}

/// A `p`-linear map `A^{⊗p} → A` given on basis tuples; missing tuples map to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct HochschildCochain<B: Ord> {
    arity: usize,
    values: BTreeMap<Vec<B>, LinComb<B>>,
}

impl<B: Ord + Clone + Debug + Send + Sync> HochschildCochain<B> {
    pub fn zero(arity: usize) -> Self {
        HochschildCochain { arity, values: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Vec<B>, LinComb<B>> {
        &self.values
    }

    pub fn set(&mut self, tuple: Vec<B>, value: LinComb<B>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ShapeMismatch(format!("expected {} arguments, got {}", self.arity, tuple.len())));
        }
        if value.is_zero() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, value);
        }
        Ok(())
    }

    /// Tabulates `f` on the view's argument tuples.
    pub fn from_fn<V>(view: &V, arity: usize, f: impl Fn(&[B]) -> LinComb<B>) -> Self
    where
        V: AssociativeAlgebraView<Basis = B>,
    {
        let mut out = Self::zero(arity);
        for t in view.argument_tuples(arity) {
            let v = f(&t);
            if !v.is_zero() {
                out.values.insert(t, v);
            }
        }
        out
    }

    pub fn eval(&self, tuple: &[B]) -> LinComb<B> {
        self.values.get(tuple).cloned().unwrap_or_default()
    }

    /// Multilinear evaluation on combinations.
    pub fn eval_linear(&self, args: &[LinComb<B>]) -> LinComb<B> {
        let mut out = LinComb::zero();
        let mut cur: Vec<B> = Vec::with_capacity(args.len());
        fn rec<B: Ord + Clone + Debug + Send + Sync>(
            f: &HochschildCochain<B>,
            args: &[LinComb<B>],
            cur: &mut Vec<B>,
            coeff: Scalar,
            out: &mut LinComb<B>,
        ) {
            if cur.len() == args.len() {
                if let Some(v) = f.values.get(cur.as_slice()) {
                    out.add_scaled(v, &coeff);
                }
                return;
            }
            for (b, c) in &args[cur.len()] {
                cur.push(b.clone());
                rec(f, args, cur, &coeff * c, out);
                cur.pop();
            }
        }
        rec(self, args, &mut cur, Scalar::one(), &mut out);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, v) in &other.values {
            let e = self.values.entry(t.clone()).or_default();
            e.add_assign(v);
            if e.is_zero() {
                self.values.remove(t);
            }
        }
    }
}

/// `(δf)(a₀, …, a_p)` on one basis tuple.
pub fn delta_h_value<V: AssociativeAlgebraView>(
    view: &V,
    f: &HochschildCochain<V::Basis>,
    tuple: &[V::Basis],
) -> LinComb<V::Basis> {
    let p = f.arity;
    debug_assert_eq!(tuple.len(), p + 1);
    let mut out = view.multiply(&LinComb::basis(tuple[0].clone()), &f.eval(&tuple[1..]));
    let mut args: Vec<LinComb<V::Basis>> = Vec::with_capacity(p);
    for i in 0..p {
        args.clear();
        args.extend(tuple[..i].iter().map(|b| LinComb::basis(b.clone())));
        args.push(view.multiply_basis(&tuple[i], &tuple[i + 1]));
        args.extend(tuple[i + 2..].iter().map(|b| LinComb::basis(b.clone())));
        let v = f.eval_linear(&args);
        if i % 2 == 0 {
            out.sub_assign(&v);
        } else {
            out.add_assign(&v);
        }
    }
    let last = view.multiply(&f.eval(&tuple[..p]), &LinComb::basis(tuple[p].clone()));
    if p % 2 == 0 {
        out.sub_assign(&last);
    } else {
        out.add_assign(&last);
    }
    out
}

pub fn delta_h<V: AssociativeAlgebraView>(
    view: &V,
    f: &HochschildCochain<V::Basis>,
) -> Result<HochschildCochain<V::Basis>> {
    if let Some(t) = f.values.keys().find(|t| t.len() != f.arity) {
        return Err(Error::ShapeMismatch(format!("stored tuple {t:?} does not have arity {}", f.arity)));
    }
    let tuples = view.argument_tuples(f.arity + 1);
    let values: BTreeMap<_, _> = tuples
        .into_par_iter()
        .filter_map(|t| {
            let v = delta_h_value(view, f, &t);
            (!v.is_zero()).then_some((t, v))
        })
        .collect();
    Ok(HochschildCochain { arity: f.arity + 1, values })
}

/// Lists every argument tuple on which `δf` does not vanish.
pub fn hochschild_cocycle_check<V: AssociativeAlgebraView>(view: &V, f: &HochschildCochain<V::Basis>) -> VerificationReport {
    let mut report = VerificationReport::new("hochschild cocycle");
    match delta_h(view, f) {
        Err(e) => report.push("shape", vec![], e.to_string()),
        Ok(d) => {
            for t in d.values.keys() {
                report.push(
                    "cocycle",
                    t.iter().map(|b| view.render_basis(b)).collect(),
                    "δf does not vanish",
                );
            }
        }
    }
    report
}
