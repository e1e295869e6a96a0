use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::ElementSet;

/// Value oracle for a set function `f: 2^S -> Q>=0`.
///
/// Implementations are immutable once built and are shared freely between
/// threads. `value` may assume its argument lies inside the ground set; the
/// checked entry points are [`evaluate`] and [`marginal`].
pub trait Valuation: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: ElementSet) -> Rational;

    /// `f(action ∪ base) - f(base)`.
    fn gain(&self, action: ElementSet, base: ElementSet) -> Rational {
        self.value(action.union(base)) - self.value(base)
    }
}

impl<V: Valuation + ?Sized> Valuation for &V {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, set: ElementSet) -> Rational {
        (**self).value(set)
    }
}

impl<V: Valuation + ?Sized> Valuation for Box<V> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, set: ElementSet) -> Rational {
        (**self).value(set)
    }
}

fn check_subset<V: Valuation + ?Sized>(oracle: &V, set: ElementSet) -> Result<()> {
    if set.fits(oracle.ground_size()) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "subset {:?} is not contained in a ground set of size {}",
            set,
            oracle.ground_size()
        )))
    }
}

/// Range-checked `f(subset)`.
pub fn evaluate<V: Valuation + ?Sized>(oracle: &V, subset: ElementSet) -> Result<Rational> {
    check_subset(oracle, subset)?;
    Ok(oracle.value(subset))
}

/// Range-checked marginal contribution `Δ(action | base)`.
pub fn marginal<V: Valuation + ?Sized>(
    oracle: &V,
    action: ElementSet,
    base: ElementSet,
) -> Result<Rational> {
    check_subset(oracle, action)?;
    check_subset(oracle, base)?;
    Ok(oracle.gain(action, base))
}

/// A set function given by its full value table, for small ground sets.
#[derive(Clone, Debug)]
pub struct Tabulated {
    ground_size: usize,
    table: Vec<Rational>,
}

impl Tabulated {
    pub const MAX_GROUND: usize = 20;

    pub fn from_fn(ground_size: usize, f: impl Fn(ElementSet) -> Rational) -> Result<Self> {
        if ground_size > Self::MAX_GROUND {
            return Err(Error::guard(
                "tabulating a set function",
                Self::MAX_GROUND as u64,
                ground_size as u64,
            ));
        }
        let table = (0..1u128 << ground_size)
            .map(|bits| f(ElementSet::from_bits(bits)))
            .collect();
        Ok(Tabulated { ground_size, table })
    }

    pub fn is_normalized(&self) -> bool {
        self.table[0].is_zero()
    }
}

impl Valuation for Tabulated {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn value(&self, set: ElementSet) -> Rational {
        self.table[set.bits() as usize]
    }
}
