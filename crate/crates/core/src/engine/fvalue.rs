use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{decimal, nonzero_count, EngineError};
use crate::gf2::{common_fixed_space, BitMatrix};
use crate::rep::ModuleTag;

/// One conjugacy class of maximal subgroups: a representative's generators
/// on the natural module and the number of conjugates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalClassRecord {
    pub label: String,
    pub class_size: BigUint,
    pub generators: Vec<BitMatrix>,
    pub module_tag: ModuleTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFix {
    pub label: String,
    #[serde(with = "decimal")]
    pub class_size: BigUint,
    pub fix_dim: usize,
    /// `class_size · (2^fix_dim - 1)`.
    #[serde(with = "decimal")]
    pub contribution: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FValueReport {
    pub d: usize,
    pub classes: Vec<ClassFix>,
    #[serde(with = "decimal")]
    pub total: BigUint,
}

impl FValueReport {
    /// `dim fix(M) <= ⌊d/2⌋` for every non-normal class (more than one
    /// conjugate). A normal maximal subgroup can fix more, e.g. the trivial
    /// subgroup of a group of prime order.
    pub fn check_fix_bound(&self) -> Result<(), EngineError> {
        match self.classes.iter().find(|c| c.class_size > BigUint::one() && c.fix_dim > self.d / 2) {
            Some(c) => Err(EngineError::FixTooLarge { label: c.label.clone(), dim: c.fix_dim, d: self.d }),
            None => Ok(()),
        }
    }
}

/// `f = Σ class_size · (2^{dim fix} - 1)` over the given classes, where
/// `fix` is the common fixed space of each representative on the module
/// `tag` of dimension `d`.
pub fn f_value(classes: &[MaximalClassRecord], tag: &ModuleTag, d: usize) -> Result<FValueReport, EngineError> {
    if classes.is_empty() {
        return Err(EngineError::NoClasses);
    }
    for c in classes {
        if c.module_tag != *tag {
            return Err(EngineError::TagMismatch {
                label: c.label.clone(),
                expected: tag.to_string(),
                found: c.module_tag.to_string(),
            });
        }
        if c.class_size.is_zero() {
            return Err(EngineError::Malformed(format!("class {} has size 0", c.label)));
        }
        for (i, g) in c.generators.iter().enumerate() {
            let k = g.require_square()?;
            let induced = tag.induced_dim(k)?;
            if induced != d {
                return Err(EngineError::DimensionMismatch { expected: d, found: induced });
            }
            if !g.is_invertible() {
                return Err(EngineError::NonInvertible { label: c.label.clone(), index: i });
            }
        }
    }
    let dims: Vec<usize> = classes
        .par_iter()
        .map(|c| -> Result<usize, EngineError> {
            let induced = tag.induce_all(&c.generators)?;
            Ok(common_fixed_space(d, &induced)?.dim())
        })
        .collect::<Result<_, _>>()?;
    let mut total = BigUint::zero();
    let rows = classes
        .iter()
        .zip(dims)
        .map(|(c, fix_dim)| {
            let contribution = &c.class_size * nonzero_count(fix_dim as u32);
            total += &contribution;
            ClassFix { label: c.label.clone(), class_size: c.class_size.clone(), fix_dim, contribution }
        })
        .collect();
    Ok(FValueReport { d, classes: rows, total })
}

/// The number of `m`-dimensional subspaces of `GF(2)^n`.
pub fn gaussian_binomial(n: u32, m: u32) -> Result<BigUint, EngineError> {
    if m > n {
        return Err(EngineError::Malformed(format!("gaussian binomial [{n}, {m}] needs m <= n")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= nonzero_count(n - i);
        den *= nonzero_count(m - i);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(label: &str, size: u32, gens: Vec<BitMatrix>) -> MaximalClassRecord {
        MaximalClassRecord { label: label.into(), class_size: size.into(), generators: gens, module_tag: ModuleTag::Natural }
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(7, 3).unwrap(), BigUint::from(11811u32));
        assert_eq!(gaussian_binomial(7, 1).unwrap(), BigUint::from(127u32));
        assert_eq!(gaussian_binomial(9, 0).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(4, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn prime_singer_trivial_class() {
        let r = f_value(&[class("1", 1, vec![])], &ModuleTag::Natural, 3).unwrap();
        assert_eq!(r.total, BigUint::from(7u32));
        assert_eq!(r.classes[0].fix_dim, 3);
        assert!(r.check_fix_bound().is_ok());
    }

    #[test]
    fn singer_fifteen() {
        let c = BitMatrix::companion(&[true, true, false, false]);
        let classes = [class("C5", 1, vec![c.pow(3)]), class("C3", 1, vec![c.pow(5)])];
        let r = f_value(&classes, &ModuleTag::Natural, 4).unwrap();
        assert_eq!(r.total, BigUint::zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(f_value(&[], &ModuleTag::Natural, 3), Err(EngineError::NoClasses)));
        let bad = class("x", 1, vec![BitMatrix::identity(3)]);
        assert!(matches!(f_value(&[bad.clone()], &ModuleTag::Natural, 4), Err(EngineError::DimensionMismatch { .. })));
        let singular = class("s", 1, vec![BitMatrix::zeros(3, 3)]);
        assert!(matches!(f_value(&[singular], &ModuleTag::Natural, 3), Err(EngineError::NonInvertible { .. })));
        let big = class("b", 3, vec![BitMatrix::identity(3)]);
        let r = f_value(&[big], &ModuleTag::Natural, 3).unwrap();
        assert!(matches!(r.check_fix_bound(), Err(EngineError::FixTooLarge { .. })));
    }
}
