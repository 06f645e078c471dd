use serde::{Deserialize, Serialize};

use super::ResidueElement;

/// Digits `a_lo, a_(lo+1), ..., a_(hi-1)` of an expansion `sum a_m pi^m`.
///
/// Windows produced by [`PAdicElement::digits`](super::PAdicElement::digits)
/// may start with zero digits; [`DigitExpansion::trimmed`] gives the
/// canonical form whose leading digit is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub lo: i64,
    pub digits: Vec<ResidueElement>,
}

impl DigitExpansion {
    pub fn new(lo: i64, digits: Vec<ResidueElement>) -> Self {
        DigitExpansion { lo, digits }
    }

    pub fn empty(at: i64) -> Self {
        DigitExpansion { lo: at, digits: Vec::new() }
    }

    /// One past the last index.
    pub fn hi(&self) -> i64 {
        self.lo + self.digits.len() as i64
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| d.is_zero())
    }

    pub fn get(&self, index: i64) -> ResidueElement {
        if index < self.lo || index >= self.hi() {
            ResidueElement::ZERO
        } else {
            self.digits[(index - self.lo) as usize]
        }
    }

    /// Drops leading and trailing zero digits.
    pub fn trimmed(&self) -> DigitExpansion {
        let start = self.digits.iter().position(|d| !d.is_zero());
        match start {
            None => DigitExpansion::empty(self.hi()),
            Some(s) => {
                let end = self.digits.iter().rposition(|d| !d.is_zero()).unwrap() + 1;
                DigitExpansion::new(self.lo + s as i64, self.digits[s..end].to_vec())
            }
        }
    }

    /// Drops leading zero digits only, keeping the window's upper end.
    pub fn strip_leading(&self) -> DigitExpansion {
        match self.digits.iter().position(|d| !d.is_zero()) {
            None => DigitExpansion::empty(self.hi()),
            Some(s) => DigitExpansion::new(self.lo + s as i64, self.digits[s..].to_vec()),
        }
    }

    /// Sub-window `[lo, hi)`, zero-padded outside the stored digits.
    pub fn window(&self, lo: i64, hi: i64) -> DigitExpansion {
        DigitExpansion::new(lo, (lo..hi.max(lo)).map(|i| self.get(i)).collect())
    }

    /// True when `self` is a prefix of `other`: same start, shorter or equal.
    pub fn is_prefix_of(&self, other: &DigitExpansion) -> bool {
        if self.is_empty() {
            return true;
        }
        self.lo == other.lo && other.digits.starts_with(&self.digits)
    }
}
