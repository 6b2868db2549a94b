use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigUint;

use super::term::Var;

/// A finite map from variables to natural numbers.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Var, BigUint>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn get(&self, v: Var) -> Option<&BigUint> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: Var, n: impl Into<BigUint>) {
        self.0.insert(v, n.into());
    }

    /// `α[n/v]`: like `self` except that `v` is sent to `n`.
    pub fn with(&self, v: Var, n: impl Into<BigUint>) -> Assignment {
        let mut out = self.clone();
        out.insert(v, n);
        out
    }

    /// Keep only the listed variables.
    pub fn restrict(&self, vars: &[Var]) -> Assignment {
        Assignment(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, n)| (*v, n.clone()))
                .collect(),
        )
    }

    pub fn covers(&self, vars: &[Var]) -> bool {
        vars.iter().all(|v| self.0.contains_key(v))
    }

    pub fn first_missing(&self, vars: &[Var]) -> Option<Var> {
        vars.iter().copied().find(|v| !self.0.contains_key(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &BigUint)> {
        self.0.iter().map(|(v, n)| (*v, n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<N: Into<BigUint>> FromIterator<(Var, N)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, N)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(v, n)| (v, n.into())).collect())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}↦{n}")?;
        }
        f.write_str("}")
    }
}
