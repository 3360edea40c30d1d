use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Halton points in `[0,1)^dim` with a seeded Cranley-Patterson shift.
pub fn halton_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(dim <= PRIMES.len(), "at most {} dimensions", PRIMES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (1..=count as u64)
        .map(|i| (0..dim).map(|d| (radical_inverse(i, PRIMES[d]) + shift[d]).fract()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = halton_points(4, 100, 7);
        assert_eq!(a, halton_points(4, 100, 7));
        assert_ne!(a, halton_points(4, 100, 8));
        assert!(a.iter().flatten().all(|x| (0.0..1.0).contains(x)));
        assert_eq!(radical_inverse(3, 2), 0.75);
    }
}
