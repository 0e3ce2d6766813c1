use std::fmt;

use super::TautError;

/// Which boundary strata are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Policy {
    /// Open locus of curves of compact type: only trees, no self-edges.
    CompactType,
    /// Full Deligne-Mumford compactification.
    Stable,
}

/// One connected factor `M_{g, P}` of a product of moduli spaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub genus: u32,
    pub markings: Vec<String>,
}

impl Factor {
    pub fn new(genus: u32, markings: &[&str]) -> Self {
        let mut markings: Vec<String> = markings.iter().map(|s| s.to_string()).collect();
        markings.sort();
        Factor { genus, markings }
    }

    pub fn dim(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.markings.len() as i64
    }

    pub fn is_stable(&self) -> bool {
        2 * self.genus as i64 - 2 + self.markings.len() as i64 > 0
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{{{}}})", self.genus, self.markings.join(","))
    }
}

/// Product of moduli spaces on which a class lives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ambient {
    pub factors: Vec<Factor>,
    pub policy: Policy,
}

impl Ambient {
    pub fn new(factors: Vec<Factor>, policy: Policy) -> Result<Self, TautError> {
        for f in &factors {
            if !f.is_stable() {
                return Err(TautError::UnstableAmbient(f.to_string()));
            }
            if factors.len() > 1 && f.markings.is_empty() {
                return Err(TautError::AmbientMismatch(format!(
                    "factor {f} needs a marking to be identified inside a product"
                )));
            }
        }
        let mut seen: Vec<&String> = factors.iter().flat_map(|f| f.markings.iter()).collect();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(TautError::MarkingCollision(w[0].clone()));
        }
        Ok(Ambient { factors, policy })
    }

    /// `M_{g,n}` with markings `p1..pn`.
    pub fn mgn(g: u32, n: usize, policy: Policy) -> Result<Self, TautError> {
        let labels: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        Self::new(vec![Factor::new(g, &refs)], policy)
    }

    pub fn single(g: u32, markings: &[&str], policy: Policy) -> Result<Self, TautError> {
        Self::new(vec![Factor::new(g, markings)], policy)
    }

    pub fn dim(&self) -> i64 {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn factor_of_marking(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.markings.iter().any(|m| m == label))
    }

    /// Product ambient with the factors of `self` followed by those of `other`.
    pub fn product(&self, other: &Ambient) -> Result<Ambient, TautError> {
        if self.policy != other.policy {
            return Err(TautError::AmbientMismatch("policies differ".into()));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ambient::new(factors, self.policy)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        let tag = match self.policy {
            Policy::CompactType => "ct",
            Policy::Stable => "stable",
        };
        write!(f, "{} [{}]", parts.join(" x "), tag)
    }
}
