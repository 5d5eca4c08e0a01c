//! Graded modules over a color Lie algebra: adjoint, trivial, or given by action constants.

use crate::algebra::{ColorLieAlgebra, GradedVector, Homogeneity};
use crate::error::{Error, Result};
use crate::grading::GroupElement;
use crate::lincomb::LinComb;
use crate::report::VerificationReport;

/// Vector of a module in its homogeneous basis.
pub type ModuleVector = LinComb<usize>;

/// A representation given by the matrices `ρ(x_i)` on a homogeneous basis.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    // action[i][m] = x_i · v_m
    action: Vec<Vec<ModuleVector>>,
}

impl ExplicitModule {
    /// Validates degree-zero action and `[ρ(x_i), ρ(x_j)] = ρ([x_i, x_j])`.
    pub fn new(
        alg: &ColorLieAlgebra,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        action: Vec<Vec<ModuleVector>>,
    ) -> Result<Self> {
        let m = ExplicitModule { names, degrees, action };
        let report = m.verify(alg);
        if report.is_valid() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(report))
        }
    }

    pub fn verify(&self, alg: &ColorLieAlgebra) -> VerificationReport {
        let mut report = VerificationReport::new("representation");
        let dim = self.names.len();
        if self.degrees.len() != dim || self.action.len() != alg.dim() || self.action.iter().any(|r| r.len() != dim) {
            report.push("shape", vec![], "action table does not match algebra and module dimensions");
            return report;
        }
        let group = alg.group();
        let act = |i: usize, v: &ModuleVector| -> ModuleVector { v.map_linear(|&m| self.action[i][m].clone()) };
        for i in 0..alg.dim() {
            for mm in 0..dim {
                let target = group.compose_unchecked(alg.degree(i), &self.degrees[mm]);
                if self.action[i][mm].keys().any(|&k| self.degrees[k] != target) {
                    report.push("degree", vec![alg.name(i).into(), self.names[mm].clone()], "action is not of degree zero");
                }
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for mm in 0..dim {
                    let v = ModuleVector::basis(mm);
                    let mut lhs = act(i, &act(j, &v));
                    lhs.sub_assign(&act(j, &act(i, &v)).scaled(alg.eps(i, j)));
                    let rhs = alg.bracket_basis(i, j).map_linear(|&k| act(k, &v));
                    lhs.sub_assign(&rhs);
                    if !lhs.is_zero() {
                        report.push(
                            "representation",
                            vec![alg.name(i).into(), alg.name(j).into(), self.names[mm].clone()],
                            "[ρ(a),ρ(b)] ≠ ρ([a,b])",
                        );
                    }
                }
            }
        }
        report
    }
}

/// The module a cochain takes values in.
#[derive(Clone, Debug)]
pub enum ModuleSpec {
    /// `L` acting on itself by the bracket.
    Adjoint,
    /// The ground field in degree `e` with zero action.
    Trivial,
    Explicit(ExplicitModule),
}

impl ModuleSpec {
    pub fn dim(&self, alg: &ColorLieAlgebra) -> usize {
        match self {
            ModuleSpec::Adjoint => alg.dim(),
            ModuleSpec::Trivial => 1,
            ModuleSpec::Explicit(m) => m.names.len(),
        }
    }

    pub fn degree(&self, alg: &ColorLieAlgebra, m: usize) -> GroupElement {
        match self {
            ModuleSpec::Adjoint => alg.degree(m).clone(),
            ModuleSpec::Trivial => alg.group().identity(),
            ModuleSpec::Explicit(e) => e.degrees[m].clone(),
        }
    }

    pub fn basis_name(&self, alg: &ColorLieAlgebra, m: usize) -> String {
        match self {
            ModuleSpec::Adjoint => alg.name(m).to_string(),
            ModuleSpec::Trivial => "1".to_string(),
            ModuleSpec::Explicit(e) => e.names[m].clone(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ModuleSpec::Adjoint => "adjoint",
            ModuleSpec::Trivial => "trivial",
            ModuleSpec::Explicit(_) => "explicit",
        }
    }

    /// `x_i · v_m`.
    pub fn act_basis(&self, alg: &ColorLieAlgebra, i: usize, m: usize) -> ModuleVector {
        match self {
            ModuleSpec::Adjoint => alg.bracket_basis(i, m).clone(),
            ModuleSpec::Trivial => ModuleVector::zero(),
            ModuleSpec::Explicit(e) => e.action[i][m].clone(),
        }
    }

    /// `x_i · v` extended linearly in `v`.
    pub fn act(&self, alg: &ColorLieAlgebra, i: usize, v: &ModuleVector) -> ModuleVector {
        v.map_linear(|&m| self.act_basis(alg, i, m))
    }
}

/// `X · v` for homogeneous `X`.
pub fn module_action(
    alg: &ColorLieAlgebra,
    module: &ModuleSpec,
    x: &GradedVector,
    v: &ModuleVector,
) -> Result<ModuleVector> {
    if alg.homogeneity(x) == Homogeneity::Inhomogeneous {
        return Err(Error::Inhomogeneous("acting element must be homogeneous".into()));
    }
    let dim = module.dim(alg);
    if let Some(&k) = v.keys().next_back().filter(|&&k| k >= dim) {
        return Err(Error::IndexOutOfRange { index: k, dim });
    }
    let mut out = ModuleVector::zero();
    for (&i, c) in x {
        out.add_scaled(&module.act(alg, i, v), c);
    }
    Ok(out)
}
