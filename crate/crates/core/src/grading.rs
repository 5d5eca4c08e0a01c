//! Grading groups `Z^r × Z/n₁ × … × Z/n_s` and antisymmetric bicharacters.
//!
//! Group elements are written additively as exponent vectors: the first
//! `free_rank` entries are free exponents, the remaining ones are residues
//! kept reduced modulo the torsion orders.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingGroup {
    free_rank: usize,
    torsion: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    /// `e` for the identity, else the comma-separated exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() || self.is_identity() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Vec<u32>) -> Result<Self> {
        if let Some(&n) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::ShapeMismatch(format!("torsion order {n} must be at least 2")));
        }
        Ok(GradingGroup { free_rank, torsion })
    }

    /// The trivial group (no generators).
    pub fn trivial() -> Self {
        GradingGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(0, vec![n])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u32] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Torsion order of generator `i`, `None` for free generators.
    pub fn order_of_generator(&self, i: usize) -> Option<u32> {
        i.checked_sub(self.free_rank).map(|k| self.torsion[k])
    }

    /// `lcm` of the torsion orders; the default scalar conductor.
    pub fn exponent_lcm(&self) -> u32 {
        self.torsion.iter().fold(1u32, |acc, &n| acc.lcm(&n))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.generator_count()])
    }

    /// Builds an element, reducing torsion residues.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.generator_count() {
            return Err(Error::ShapeMismatch(format!(
                "group element has {} components, group has {} generators",
                exps.len(),
                self.generator_count()
            )));
        }
        let mut v = exps.to_vec();
        self.reduce(&mut v);
        Ok(GroupElement(v))
    }

    fn reduce(&self, v: &mut [i64]) {
        for (k, &n) in self.torsion.iter().enumerate() {
            let x = &mut v[self.free_rank + k];
            *x = x.rem_euclid(n as i64);
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.0.len() != self.generator_count() {
            return Err(Error::ShapeMismatch(format!(
                "group element {g} does not belong to a group with {} generators",
                self.generator_count()
            )));
        }
        Ok(())
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.compose_unchecked(a, b))
    }

    pub(crate) fn compose_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut v: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        GroupElement(v)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.compose_unchecked(&acc, g))
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut v: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&mut v);
        GroupElement(v)
    }

    /// Parses `e`, `0`, `1,0`, … into an element.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.identity());
        }
        let exps: std::result::Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let exps = exps.map_err(|e| Error::Parse { context: format!("degree `{s}`"), message: e.to_string() })?;
        self.element(&exps)
    }
}

/// An antisymmetric bicharacter `ε : G × G → K^×`, determined by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    group: GradingGroup,
    table: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    /// Builds a bicharacter from a generator table. Missing entries are filled
    /// from the transpose (`ε(j,i)⁻¹`) or default to 1 when both are missing.
    pub fn new(group: GradingGroup, table: Vec<Vec<Option<Scalar>>>) -> Result<Self> {
        let n = group.generator_count();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(format!("bicharacter table must be {n}×{n}")));
        }
        let mut full = vec![vec![Scalar::one(); n]; n];
        for i in 0..n {
            for j in 0..n {
                full[i][j] = match (&table[i][j], &table[j][i]) {
                    (Some(v), _) => {
                        if v.is_zero() {
                            return Err(Error::ZeroTableEntry(i, j));
                        }
                        v.clone()
                    }
                    (None, Some(t)) => t.inv().map_err(|_| Error::ZeroTableEntry(j, i))?,
                    (None, None) => Scalar::one(),
                };
            }
        }
        Ok(Bicharacter { group, table: full })
    }

    pub fn from_table(group: GradingGroup, table: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(group, table.into_iter().map(|r| r.into_iter().map(Some).collect()).collect())
    }

    /// `ε ≡ 1`.
    pub fn trivial(group: GradingGroup) -> Self {
        let n = group.generator_count();
        Bicharacter { group, table: vec![vec![Scalar::one(); n]; n] }
    }

    /// The super sign `ε(i,j) = (-1)^{ij}` on `Z/2`.
    pub fn super_sign() -> Self {
        Bicharacter { group: GradingGroup::cyclic(2).unwrap(), table: vec![vec![Scalar::from_integer(-1)]] }
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn table(&self) -> &[Vec<Scalar>] {
        &self.table
    }

    /// Smallest `m` such that `Q(ζ_m)` holds every table value and every torsion root of unity.
    pub fn conductor(&self) -> u32 {
        self.table.iter().flatten().fold(self.group.exponent_lcm(), |m, v| num_integer::lcm(m, v.conductor()))
    }

    /// `ε(g, h) = ∏ B[i][j]^{g_i h_j}`.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(self.eval_unchecked(g, h))
    }

    pub(crate) fn eval_unchecked(&self, g: &GroupElement, h: &GroupElement) -> Scalar {
        let mut acc = Scalar::one();
        let mut sign_parity = 0i64;
        for (i, &gi) in g.0.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &hj) in h.0.iter().enumerate() {
                if hj == 0 {
                    continue;
                }
                let b = &self.table[i][j];
                let e = gi * hj;
                if b.is_one() {
                    continue;
                }
                if b.is_minus_one() {
                    sign_parity += e;
                    continue;
                }
                // nonzero by construction, so pow cannot fail
                acc = &acc * &b.pow(e).expect("bicharacter entries are nonzero");
            }
        }
        if sign_parity.rem_euclid(2) == 1 {
            acc = -acc;
        }
        acc
    }

    /// Checks `B[i][j]·B[j][i] = 1` and `B[i][j]^n = B[j][i]^n = 1` for torsion order `n` of generator `j`.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("bicharacter");
        let n = self.group.generator_count();
        for i in 0..n {
            for j in i..n {
                let prod = &self.table[i][j] * &self.table[j][i];
                if !prod.is_one() {
                    report.push(
                        "antisymmetry",
                        vec![i.to_string(), j.to_string()],
                        format!("{} * {} = {} ≠ 1", self.table[i][j], self.table[j][i], prod),
                    );
                }
            }
        }
        for j in 0..n {
            let Some(order) = self.group.order_of_generator(j) else { continue };
            for i in 0..n {
                let mut pairs = vec![(i, j)];
                if i != j {
                    pairs.push((j, i));
                }
                for (a, b) in pairs {
                    let v = &self.table[a][b];
                    let p = v.pow(order as i64).expect("nonzero entry");
                    if !p.is_one() {
                        report.push(
                            "torsion",
                            vec![a.to_string(), b.to_string()],
                            format!("torsion: {v}^{order} ≠ 1"),
                        );
                    }
                }
            }
        }
        report.note("bimultiplicativity holds by construction");
        report
    }
}
