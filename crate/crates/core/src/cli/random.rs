use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{DeaError, Result};

/// Reproducible integer dataset with entries in `1..=9`, each zeroed with
/// probability `zero_density`, then shifted down by `negative_shift`.
///
/// Every unit keeps at least one positive input and one positive output
/// before the shift; a unit with an all-zero vector has no radial direction.
pub fn random_dataset(
    seed: u64,
    n: usize,
    m: usize,
    s: usize,
    zero_density: f64,
    negative_shift: f64,
) -> Result<Dataset> {
    if n == 0 {
        return Err(DeaError::EmptyDataset);
    }
    if !(0.0..=1.0).contains(&zero_density) {
        return Err(DeaError::InvalidDataset(format!(
            "zero density {zero_density} outside [0, 1]"
        )));
    }
    if !negative_shift.is_finite() {
        return Err(DeaError::InvalidDataset("shift must be finite".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = |len: usize, rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut v: Vec<f64> = (0..len)
            .map(|_| {
                if rng.random_bool(zero_density) {
                    0.0
                } else {
                    rng.random_range(1..=9) as f64
                }
            })
            .collect();
        if len > 0 && v.iter().all(|&c| c == 0.0) {
            let i = rng.random_range(0..len);
            v[i] = rng.random_range(1..=9) as f64;
        }
        v.iter_mut().for_each(|c| *c -= negative_shift);
        v
    };
    let mut inputs = Vec::with_capacity(n);
    let mut outputs = Vec::with_capacity(n);
    for _ in 0..n {
        inputs.push(block(m, &mut rng));
        outputs.push(block(s, &mut rng));
    }
    let names = (1..=n).map(|j| format!("U{j}")).collect();
    Dataset::new(names, inputs, outputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_dataset(7, 6, 2, 3, 0.3, 0.0).unwrap();
        assert_eq!(a, random_dataset(7, 6, 2, 3, 0.3, 0.0).unwrap());
        assert_ne!(a, random_dataset(8, 6, 2, 3, 0.3, 0.0).unwrap());
    }

    #[test]
    fn no_zeros_means_strictly_positive() {
        let ds = random_dataset(1, 10, 3, 3, 0.0, 0.0).unwrap();
        for j in 0..ds.n() {
            assert!(ds.x(j).iter().chain(ds.y(j)).all(|&v| (1.0..=9.0).contains(&v)));
        }
    }

    #[test]
    fn every_unit_keeps_a_positive_entry() {
        let ds = random_dataset(3, 50, 2, 2, 0.9, 0.0).unwrap();
        for j in 0..ds.n() {
            assert!(ds.x(j).iter().any(|&v| v > 0.0));
            assert!(ds.y(j).iter().any(|&v| v > 0.0));
        }
    }

    #[test]
    fn shift_produces_negative_data() {
        let ds = random_dataset(42, 8, 2, 1, 0.2, 7.0).unwrap();
        assert!(!ds.is_nonnegative());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_dataset(0, 0, 1, 1, 0.2, 0.0).is_err());
        assert!(random_dataset(0, 3, 1, 1, 1.5, 0.0).is_err());
        assert!(random_dataset(0, 3, 0, 1, 0.2, 0.0).is_err());
    }
}
