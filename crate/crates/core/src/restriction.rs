//! Restrictions (partial assignments) and query paths.

use crate::error::Error;
use crate::Result;

/// A partial assignment of variables to 0/1, stored as bitmasks over the
/// 1-based variable indices (bit i-1 corresponds to x_i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Restriction {
    fixed: u32,
    values: u32,
}

impl Restriction {
    pub fn empty() -> Self {
        Restriction::default()
    }

    pub fn from_pairs(pairs: &[(u32, bool)]) -> Result<Restriction> {
        let mut r = Restriction::empty();
        for &(var, val) in pairs {
            r = r.with(var, val)?;
        }
        Ok(r)
    }

    /// Extend by one assignment; the variable must be fresh.
    pub fn with(&self, var: u32, val: bool) -> Result<Restriction> {
        if var == 0 || var > 32 {
            return Err(Error::VarOutOfRange { var, n: 32 });
        }
        let bit = 1u32 << (var - 1);
        if self.fixed & bit != 0 {
            return Err(Error::domain(format!("variable x{var} already fixed")));
        }
        Ok(Restriction {
            fixed: self.fixed | bit,
            values: self.values | if val { bit } else { 0 },
        })
    }

    /// Union of two restrictions with disjoint supports.
    pub fn union(&self, other: &Restriction) -> Result<Restriction> {
        if self.fixed & other.fixed != 0 {
            return Err(Error::domain("restriction supports overlap".to_string()));
        }
        Ok(Restriction {
            fixed: self.fixed | other.fixed,
            values: self.values | other.values,
        })
    }

    /// |supp(rho)|.
    pub fn support_size(&self) -> u32 {
        self.fixed.count_ones()
    }

    pub fn is_fixed(&self, var: u32) -> bool {
        self.fixed >> (var - 1) & 1 == 1
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        if self.is_fixed(var) {
            Some(self.values >> (var - 1) & 1 == 1)
        } else {
            None
        }
    }

    pub fn fixed_mask(&self) -> u32 {
        self.fixed
    }

    pub fn values_mask(&self) -> u32 {
        self.values
    }

    pub fn max_var(&self) -> Option<u32> {
        if self.fixed == 0 {
            None
        } else {
            Some(32 - self.fixed.leading_zeros())
        }
    }

    /// Fixed (variable, value) pairs in ascending variable order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, bool)> + '_ {
        let fixed = self.fixed;
        let values = self.values;
        (1..=32u32)
            .filter(move |v| fixed >> (v - 1) & 1 == 1)
            .map(move |v| (v, values >> (v - 1) & 1 == 1))
    }

    /// Does table index `idx` agree with every fixed value?
    #[inline]
    pub fn consistent_with(&self, idx: u32) -> bool {
        idx & self.fixed == self.values
    }
}

/// An ordered, duplicate-free sequence of (variable, value) query steps.
/// The length-j prefix induces the restriction fixing those j variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSpec {
    steps: Vec<(u32, bool)>,
}

impl PathSpec {
    pub fn new(steps: Vec<(u32, bool)>) -> Result<PathSpec> {
        let mut seen = 0u32;
        for &(var, _) in &steps {
            if var == 0 || var > 32 {
                return Err(Error::VarOutOfRange { var, n: 32 });
            }
            let bit = 1u32 << (var - 1);
            if seen & bit != 0 {
                return Err(Error::domain(format!("variable x{var} repeats in path")));
            }
            seen |= bit;
        }
        Ok(PathSpec { steps })
    }

    /// The path querying x_1 ... x_k, all answered 1.
    pub fn ones_prefix(k: u32) -> PathSpec {
        PathSpec {
            steps: (1..=k).map(|v| (v, true)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(u32, bool)] {
        &self.steps
    }

    /// Restriction induced by the first `j` steps.
    pub fn prefix_restriction(&self, j: usize) -> Restriction {
        assert!(j <= self.steps.len());
        Restriction::from_pairs(&self.steps[..j]).expect("path steps are duplicate-free")
    }

    /// Parse "3=1,5=0" style step lists.
    pub fn parse(text: &str) -> Result<PathSpec> {
        let mut steps = Vec::new();
        for (i, part) in text.split(',').enumerate() {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (var, val) = part.split_once('=').ok_or_else(|| Error::Parse {
                line: 1,
                col: i + 1,
                msg: format!("expected VAR=BIT, found {part:?}"),
            })?;
            let var: u32 = var.trim().parse().map_err(|_| Error::Parse {
                line: 1,
                col: i + 1,
                msg: format!("bad variable index {var:?}"),
            })?;
            let val = match val.trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        col: i + 1,
                        msg: format!("bad bit value {other:?}"),
                    })
                }
            };
            steps.push((var, val));
        }
        PathSpec::new(steps)
    }
}
