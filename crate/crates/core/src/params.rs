use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("BS(p,q) requires 1 <= p <= q, got p={p}, q={q}")]
    Invalid { p: u32, q: u32 },
}

/// The pair `(p, q)` of the presentation `<a, t | t a^p t^-1 = a^q>`,
/// with `1 <= p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    p: u32,
    q: u32,
}

impl GroupParams {
    pub fn new(p: u32, q: u32) -> Result<GroupParams, ParamsError> {
        if p == 0 || p > q {
            return Err(ParamsError::Invalid { p, q });
        }
        Ok(GroupParams { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_solvable(&self) -> bool {
        self.p == 1
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BS({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_order() {
        assert!(GroupParams::new(2, 3).is_ok());
        assert!(GroupParams::new(1, 1).is_ok());
        assert_eq!(
            GroupParams::new(3, 2),
            Err(ParamsError::Invalid { p: 3, q: 2 })
        );
        assert!(GroupParams::new(0, 2).is_err());
        assert_eq!(GroupParams::new(4, 7).unwrap().to_string(), "BS(4,7)");
    }
}
