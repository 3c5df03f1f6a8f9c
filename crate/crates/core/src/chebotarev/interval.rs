use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::PrimeModulus;

/// `{M, M+1, ..., M+length-1}` reduced mod `p`, optionally pushed through
/// the progression `i -> A i + B`. Intervals may wrap around `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalFp {
    #[serde(skip)]
    modulus: PrimeModulus,
    start: u64,
    length: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    progression: Option<(u64, u64)>,
}

impl IntervalFp {
    pub fn new(modulus: PrimeModulus, start: u64, length: u64) -> Result<Self> {
        let p = modulus.get();
        if length == 0 || length > p {
            return Err(Error::invalid(format!("interval length {length} outside [1, {p}]")));
        }
        Ok(IntervalFp { modulus, start: modulus.reduce(start), length, progression: None })
    }

    /// All of `F_p`, starting at 0.
    pub fn full(modulus: PrimeModulus) -> Self {
        IntervalFp { modulus, start: 0, length: modulus.get(), progression: None }
    }

    pub fn with_progression(mut self, a: u64, b: u64) -> Result<Self> {
        let a = self.modulus.reduce(a);
        if a == 0 {
            return Err(Error::invalid("progression step must be nonzero"));
        }
        self.progression = Some((a, self.modulus.reduce(b)));
        Ok(self)
    }

    /// Parses `M:length[:A:B]`.
    pub fn parse(modulus: PrimeModulus, s: &str) -> Result<Self> {
        let fields = s
            .split(':')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad interval field {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match fields[..] {
            [m, len] => IntervalFp::new(modulus, m, len),
            [m, len, a, b] => IntervalFp::new(modulus, m, len)?.with_progression(a, b),
            _ => Err(Error::Parse(format!("interval {s:?} is not M:length[:A:B]"))),
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn progression(&self) -> Option<(u64, u64)> {
        self.progression
    }

    pub fn is_full(&self) -> bool {
        self.length == self.modulus.get()
    }

    /// The `i`-th element, `0 <= i < len`.
    #[inline]
    pub fn element(&self, i: u64) -> u64 {
        let m = self.modulus;
        let base = m.add(self.start, m.reduce(i));
        match self.progression {
            None => base,
            Some((a, b)) => m.add(m.mul(a, base), b),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(|i| self.element(i))
    }

    /// The same interval translated by `-c`.
    pub fn shifted_down(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        match self.progression {
            None => IntervalFp { start: m.sub(self.start, c), ..*self },
            Some((a, b)) => IntervalFp { progression: Some((a, m.sub(b, c))), ..*self },
        }
    }
}

impl fmt::Display for IntervalFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.length)?;
        if let Some((a, b)) = self.progression {
            write!(f, ":{a}:{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn wraps_around() {
        let i = IntervalFp::new(m(7), 5, 4).unwrap();
        assert_eq!(i.iter().collect::<Vec<_>>(), vec![5, 6, 0, 1]);
    }

    #[test]
    fn progression_elements() {
        let i = IntervalFp::parse(m(11), "2:3:3:1").unwrap();
        assert_eq!(i.iter().collect::<Vec<_>>(), vec![7, 10, 2]);
        assert_eq!(i.to_string(), "2:3:3:1");
    }

    #[test]
    fn rejects_bad_lengths_and_syntax() {
        assert!(IntervalFp::new(m(7), 0, 0).is_err());
        assert!(IntervalFp::new(m(7), 0, 8).is_err());
        assert!(IntervalFp::parse(m(7), "1:2:3").is_err());
        assert!(IntervalFp::parse(m(7), "1:x").is_err());
        assert!(IntervalFp::parse(m(7), "1:2:0:1").is_err());
    }

    #[test]
    fn full_field_is_a_permutation() {
        let i = IntervalFp::full(m(13)).with_progression(5, 4).unwrap();
        let mut v: Vec<u64> = i.iter().collect();
        v.sort_unstable();
        assert_eq!(v, (0..13).collect::<Vec<_>>());
    }

    #[test]
    fn shifting_down_translates_elements() {
        for s in ["3:5", "3:5:2:6"] {
            let i = IntervalFp::parse(m(11), s).unwrap();
            let j = i.shifted_down(4);
            for (x, y) in i.iter().zip(j.iter()) {
                assert_eq!((y + 4) % 11, x);
            }
        }
    }
}
