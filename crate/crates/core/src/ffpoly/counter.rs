use std::cell::Cell;

/// Tally of field multiplications performed inside polynomial arithmetic.
///
/// Only multiplications are counted; additions, subtractions and the
/// per-call inversion of a leading coefficient are not. A counter belongs to
/// a single computation and is deliberately `!Sync`.
#[derive(Debug, Default)]
pub struct MulCounter {
    mults: Cell<u64>,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&self, n: u64) {
        self.mults.set(self.mults.get() + n);
    }

    pub fn get(&self) -> u64 {
        self.mults.get()
    }

    pub fn reset(&self) {
        self.mults.set(0);
    }
}
