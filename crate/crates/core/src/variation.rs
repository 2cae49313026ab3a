use rand::Rng;

use crate::rng::RngStream;
use crate::subset::Subset;

/// Flips each bit independently with probability `1/n`.
pub fn bitwise_mutate(parent: &Subset, rng: &mut RngStream) -> Subset {
    let n = parent.universe();
    assert!(n >= 1, "mutation needs a nonempty ground set");
    let p = 1.0 / n as f64;
    let mut child = parent.clone();
    for i in 0..n {
        if rng.random_bool(p) {
            child.toggle(i);
        }
    }
    child
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bit_always_flips() {
        let mut rng = RngStream::new(3);
        let parent = Subset::empty(1);
        for _ in 0..10_000 {
            assert_eq!(bitwise_mutate(&parent, &mut rng).count(), 1);
        }
    }

    #[test]
    fn mean_flip_count_is_one() {
        let mut rng = RngStream::new(4);
        let parent = Subset::empty(100);
        let trials = 10_000;
        let flips: usize = (0..trials)
            .map(|_| bitwise_mutate(&parent, &mut rng).count())
            .sum();
        let mean = flips as f64 / trials as f64;
        assert!((0.97..=1.03).contains(&mean), "mean {mean}");
    }

    #[test]
    fn deterministic_under_seed() {
        let parent = Subset::from_items(8, [1, 5]);
        let a = bitwise_mutate(&parent, &mut RngStream::new(17));
        let b = bitwise_mutate(&parent, &mut RngStream::new(17));
        assert_eq!(a, b);
    }
}
