//! JSON algebra definition files.
//!
//! ```json
//! {
//!   "group": { "free_rank": 0, "torsion": [2] },
//!   "bicharacter": { "conductor": 2, "table": [["-1"]] },
//!   "basis": [ { "name": "theta", "degree": [1] }, { "name": "z", "degree": [0] } ],
//!   "brackets": [ { "left": "theta", "right": "theta", "terms": [ { "out": "z", "coeff": "1" } ] } ],
//!   "deformation": [ { "order": 1, "values": [ ... same shape as brackets ... ] } ],
//!   "cocycle": [ { "left": "x", "right": "z", "value": "1" } ]
//! }
//! ```
//!
//! Scalars are strings in the literal syntax of [`parse_scalar`]; `z^k` refers
//! to `ζ_m` with `m` the bicharacter conductor. Table entries may be `null`,
//! in which case they are inferred from the transposed entry.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{ColorLieAlgebra, GradedVector};
use crate::cochain::Cochain;
use crate::deformation::{cochain_from_pairs, DeformedBracket};
use crate::error::{Error, Result};
use crate::grading::{Bicharacter, GradingGroup};
use crate::representation::{ModuleSpec, ModuleVector};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicharacterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u32>,
    pub table: Vec<Vec<Option<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub out: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub order: usize,
    pub values: Vec<BracketSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub left: String,
    pub right: String,
    pub value: String,
}

/// The on-disk shape of an algebra definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bicharacter: Option<BicharacterSpec>,
    pub basis: Vec<BasisSpec>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deformation: Vec<DeformationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<CocycleSpec>>,
}

/// A parsed definition with its optional payloads.
#[derive(Clone, Debug)]
pub struct Definition {
    pub algebra: ColorLieAlgebra,
    /// `μ_1, …, μ_r` in order; missing orders are zero.
    pub deformation: Vec<Cochain>,
    pub cocycle: Option<Cochain>,
}

impl Definition {
    /// `μ_t` truncated at `order`, or an error when the file carries components beyond it.
    pub fn deformed_bracket(&self, order: usize) -> Result<DeformedBracket> {
        let mut higher = self.deformation.clone();
        while higher.len() > order && higher.last().is_some_and(Cochain::is_zero) {
            higher.pop();
        }
        DeformedBracket::new(&self.algebra, higher, order)
    }
}

fn parse_err(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { context: context.into(), message: message.into() }
}

fn json_err(e: serde_json::Error, source: &str) -> Error {
    parse_err(format!("{source} line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_definition_str(text: &str, verify: bool) -> Result<Definition> {
    let file: DefinitionFile = serde_json::from_str(text).map_err(|e| json_err(e, "definition"))?;
    file.into_definition(verify)
}

pub fn parse_definition(path: &Path, verify: bool) -> Result<Definition> {
    let text = std::fs::read_to_string(path)?;
    let file: DefinitionFile =
        serde_json::from_str(&text).map_err(|e| json_err(e, &path.display().to_string()))?;
    file.into_definition(verify)
}

impl DefinitionFile {
    pub fn into_definition(self, verify: bool) -> Result<Definition> {
        let group = GradingGroup::new(self.group.free_rank, self.group.torsion.clone())?;
        let given = self.bicharacter.as_ref().and_then(|b| b.conductor);
        let conductor = given.unwrap_or_else(|| group.exponent_lcm().max(1));
        let bicharacter = match &self.bicharacter {
            None => Bicharacter::trivial(group.clone()),
            Some(b) => {
                let table = b
                    .table
                    .iter()
                    .map(|row| row.iter().map(|e| e.as_deref().map(|s| parse_scalar(s, conductor)).transpose()).collect())
                    .collect::<Result<Vec<Vec<Option<Scalar>>>>>()?;
                Bicharacter::new(group.clone(), table)?
            }
        };
        let conductor = given.unwrap_or_else(|| bicharacter.conductor());
        let mut builder = ColorLieAlgebra::builder(bicharacter);
        for (i, b) in self.basis.iter().enumerate() {
            if self.basis[..i].iter().any(|o| o.name == b.name) {
                return Err(parse_err("basis", format!("duplicate basis name `{}`", b.name)));
            }
            let degree = group.element(&b.degree)?;
            builder.add_basis_element(&b.name, degree);
        }
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let index = |n: &str, ctx: &str| {
            names.iter().position(|m| m == n).ok_or_else(|| parse_err(ctx, format!("unknown basis element `{n}`")))
        };
        let vector = |terms: &[TermSpec], ctx: &str| -> Result<GradedVector> {
            let mut v = GradedVector::zero();
            for t in terms {
                v.add_term(index(&t.out, ctx)?, parse_scalar(&t.coeff, conductor)?);
            }
            Ok(v)
        };
        for br in &self.brackets {
            let ctx = format!("bracket [{}, {}]", br.left, br.right);
            let (l, r) = (index(&br.left, &ctx)?, index(&br.right, &ctx)?);
            builder.set_bracket(l, r, vector(&br.terms, &ctx)?);
        }
        let algebra = if verify { builder.build()? } else { builder.build_unverified()? };
        let pairs = |values: &[BracketSpec], ctx: &str| -> Result<Vec<((usize, usize), ModuleVector)>> {
            values
                .iter()
                .map(|b| Ok(((index(&b.left, ctx)?, index(&b.right, ctx)?), vector(&b.terms, ctx)?)))
                .collect()
        };
        let mut deformation: Vec<Cochain> = Vec::new();
        for d in &self.deformation {
            if d.order == 0 {
                return Err(parse_err("deformation", "orders start at 1"));
            }
            let ctx = format!("deformation order {}", d.order);
            if deformation.len() < d.order {
                deformation.resize(d.order, Cochain::zero(2, group.identity()));
            }
            let c = cochain_from_pairs(&algebra, &ModuleSpec::Adjoint, &pairs(&d.values, &ctx)?)?;
            deformation[d.order - 1].add_assign(&c);
        }
        let cocycle = match &self.cocycle {
            None => None,
            Some(values) => {
                let mut ps = Vec::new();
                for c in values {
                    let ctx = format!("cocycle ({}, {})", c.left, c.right);
                    let v = ModuleVector::from_term(0, parse_scalar(&c.value, conductor)?);
                    ps.push(((index(&c.left, &ctx)?, index(&c.right, &ctx)?), v));
                }
                Some(cochain_from_pairs(&algebra, &ModuleSpec::Trivial, &ps)?)
            }
        };
        Ok(Definition { algebra, deformation, cocycle })
    }
}

fn scalar_literal(s: &Scalar) -> String {
    s.to_string()
}

fn bracket_specs(alg: &ColorLieAlgebra, pairs: impl Iterator<Item = (usize, usize, GradedVector)>) -> Vec<BracketSpec> {
    pairs
        .filter(|(_, _, v)| !v.is_zero())
        .map(|(l, r, v)| BracketSpec {
            left: alg.name(l).to_string(),
            right: alg.name(r).to_string(),
            terms: v.iter().map(|(&k, c)| TermSpec { out: alg.name(k).to_string(), coeff: scalar_literal(c) }).collect(),
        })
        .collect()
}

/// The file form of a definition; brackets are written for the pairs given at construction.
pub fn render_definition(def: &Definition) -> DefinitionFile {
    let alg = &def.algebra;
    let group = alg.group();
    let bicharacter = alg.bicharacter();
    let conductor = bicharacter.conductor();
    let bich = (group.generator_count() > 0).then(|| BicharacterSpec {
        conductor: Some(conductor),
        table: bicharacter.table().iter().map(|row| row.iter().map(|s| Some(scalar_literal(s))).collect()).collect(),
    });
    let brackets = bracket_specs(alg, alg.given_pairs().map(|(l, r)| (l, r, alg.bracket_basis(l, r).clone())));
    let deformation = def
        .deformation
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| DeformationSpec {
            order: r + 1,
            values: bracket_specs(alg, c.values().iter().map(|(t, v)| (t[0], t[1], v.clone()))),
        })
        .collect();
    let cocycle = def.cocycle.as_ref().map(|c| {
        c.values()
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, v)| CocycleSpec {
                left: alg.name(t[0]).to_string(),
                right: alg.name(t[1]).to_string(),
                value: scalar_literal(&v.coeff(&0)),
            })
            .collect()
    });
    DefinitionFile {
        group: GroupSpec { free_rank: group.free_rank(), torsion: group.torsion_orders().to_vec() },
        bicharacter: bich,
        basis: alg
            .basis()
            .iter()
            .map(|b| BasisSpec { name: b.name.clone(), degree: b.degree.exponents().to_vec() })
            .collect(),
        brackets,
        deformation,
        cocycle,
    }
}

pub fn render_definition_json(def: &Definition) -> String {
    serde_json::to_string_pretty(&render_definition(def)).expect("definition serializes")
}

/// Wraps an algebra without payloads.
pub fn definition_of(alg: &ColorLieAlgebra) -> Definition {
    Definition { algebra: alg.clone(), deformation: Vec::new(), cocycle: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn same_algebra(a: &ColorLieAlgebra, b: &ColorLieAlgebra) -> bool {
        let n = a.dim();
        n == b.dim()
            && a.group() == b.group()
            && a.bicharacter() == b.bicharacter()
            && a.basis() == b.basis()
            && (0..n).all(|i| (0..n).all(|j| a.bracket_basis(i, j) == b.bracket_basis(i, j)))
    }

    #[test]
    fn fixtures_round_trip() {
        for (name, alg) in fixtures::all() {
            let text = render_definition_json(&definition_of(&alg));
            let back = parse_definition_str(&text, true).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(same_algebra(&alg, &back.algebra), "{name}");
            assert_eq!(render_definition_json(&back), text, "{name}");
        }
    }

    #[test]
    fn super_line_signs() {
        let text = r#"{
            "group": {"torsion": [2]},
            "bicharacter": {"table": [["-1"]]},
            "basis": [{"name": "theta", "degree": [1]}, {"name": "z", "degree": [0]}],
            "brackets": [{"left": "theta", "right": "theta", "terms": [{"out": "z", "coeff": "1"}]}]
        }"#;
        let d = parse_definition_str(text, true).unwrap();
        assert!(d.algebra.eps(0, 0).is_minus_one());
        assert_eq!(d.algebra.group().torsion_orders(), &[2]);
    }

    #[test]
    fn degree_violation_is_located() {
        let text = r#"{
            "group": {"torsion": [2]},
            "bicharacter": {"table": [["-1"]]},
            "basis": [{"name": "a", "degree": [1]}, {"name": "b", "degree": [0]}],
            "brackets": [{"left": "a", "right": "b", "terms": [{"out": "b", "coeff": "1"}]}]
        }"#;
        match parse_definition_str(text, true) {
            Err(Error::InvalidAlgebra(r)) => {
                let v = r.violations.iter().find(|v| v.kind == "grading").expect("grading violation");
                assert_eq!(v.location, vec!["a", "b", "b"]);
            }
            other => panic!("expected validation error, got {other:?}"),
        }
        assert!(parse_definition_str(text, false).is_ok());
    }

    #[test]
    fn json_errors_carry_position() {
        let err = parse_definition_str("{\n  \"group\": 3\n}", true).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_definition_str(
            r#"{"group": {}, "basis": [{"name": "x", "degree": []}], "brackets": [{"left": "x", "right": "q", "terms": []}]}"#,
            true,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown basis element `q`"), "{err}");
    }

    #[test]
    fn payloads_round_trip() {
        let text = r#"{
            "group": {},
            "basis": [{"name": "x", "degree": []}, {"name": "y", "degree": []}, {"name": "z", "degree": []}],
            "brackets": [{"left": "x", "right": "y", "terms": [{"out": "z", "coeff": "1"}]}],
            "deformation": [{"order": 1, "values": [{"left": "x", "right": "z", "terms": [{"out": "y", "coeff": "1"}]}]}],
            "cocycle": [{"left": "x", "right": "z", "value": "1"}]
        }"#;
        let d = parse_definition_str(text, true).unwrap();
        assert_eq!(d.deformation.len(), 1);
        assert_eq!(d.deformation[0].eval(&d.algebra, &[2, 0]), ModuleVector::from_term(1, Scalar::from_integer(-1)));
        let back = parse_definition_str(&render_definition_json(&d), true).unwrap();
        assert_eq!(back.deformation, d.deformation);
        assert_eq!(back.cocycle, d.cocycle);
        assert!(d.deformed_bracket(2).is_ok());
    }
}
