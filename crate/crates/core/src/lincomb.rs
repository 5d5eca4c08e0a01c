//! Sparse linear combinations over an ordered key set, and the coefficient
//! rings they live over: exact scalars and `t`-truncated series.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;

use crate::scalar::Scalar;

/// A commutative coefficient ring that contains the scalars.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Scalar) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

/// An element of `K[t]/(t^{order+1})`.
///
/// Constants built through [`Coefficient::one`] or [`Coefficient::from_scalar`]
/// carry no truncation of their own (`order = usize::MAX`); every product is
/// truncated at the smaller order of its factors.
#[derive(Clone)]
pub struct Series {
    coeffs: Vec<Scalar>,
    order: usize,
}

impl Series {
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.truncate(order.saturating_add(1));
        let mut s = Series { coeffs, order };
        s.trim();
        s
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c·t^k` truncated at `order`.
    pub fn monomial(c: Scalar, k: usize, order: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v, order)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^k` (zero past the stored length).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})t^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Coefficient for Series {
    fn zero() -> Self {
        Series { coeffs: Vec::new(), order: usize::MAX }
    }
    fn one() -> Self {
        Series { coeffs: vec![Scalar::one()], order: usize::MAX }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_scalar(s: Scalar) -> Self {
        Series::new(vec![s], usize::MAX)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.order = self.order.min(other.order);
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Scalar::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.coeffs.truncate(self.order.saturating_add(1));
        self.trim();
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series { coeffs: Vec::new(), order };
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(order.saturating_add(1));
        let mut out = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Series::new(out, order)
    }
    fn neg_ref(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }
    fn scale(&self, s: &Scalar) -> Self {
        Series::new(self.coeffs.iter().map(|c| c * s).collect(), self.order)
    }
}

/// A finite linear combination `Σ c_k · k` with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct LinComb<K: Ord, C = Scalar> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord + Clone, C: Coefficient> LinComb<K, C> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn from_term(key: K, coeff: C) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn basis(key: K) -> Self {
        Self::from_term(key, C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.mul_ref(factor));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.neg_ref());
        }
    }

    pub fn scaled(&self, factor: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn scaled_by_scalar(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale(s));
        }
        out
    }

    pub fn neg(&self) -> Self {
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg_ref())).collect() }
    }

    pub fn coeff(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.terms.keys()
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self
    where
        K: 'a,
    {
        let mut out = Self::zero();
        for x in items {
            out.add_assign(x);
        }
        out
    }

    /// Applies `f` to every key (linear extension); `f` returns a combination.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2, C>) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Keeps the terms whose key satisfies `pred`.
    pub fn filter_keys(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }
}

impl<K: Ord + Clone, C: Coefficient> Default for LinComb<K, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, C: Coefficient> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord, C> IntoIterator for &'a LinComb<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone> LinComb<K, Series> {
    /// Coefficient of `t^k`, as a scalar combination.
    pub fn t_coefficient(&self, k: usize) -> LinComb<K, Scalar> {
        self.terms.iter().map(|(key, s)| (key.clone(), s.coeff(k))).collect()
    }
}
