/// Default for the "large enough" constant `C` of [`goodness_h`].
pub const DEFAULT_GOODNESS_C: f64 = 1e12;

/// Goodness of a solution `X` relative to a reference point `Z`, given their
/// objective values and costs.
///
/// When `X` costs more than `Z` this is the gain/cost ratio; otherwise the
/// objective gain is scaled by `big_c` and the cost saving added.
pub fn goodness_h(f_x: f64, c_x: f64, f_z: f64, c_z: f64, big_c: f64) -> f64 {
    if c_x > c_z {
        (f_x - f_z) / (c_x - c_z)
    } else {
        (f_x - f_z) * big_c + c_z - c_x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn both_branches() {
        assert_eq!(goodness_h(5.0, 4.0, 3.0, 2.0, 10.0), 1.0);
        assert_eq!(goodness_h(5.0, 2.0, 5.0, 2.0, 10.0), 0.0);
        assert_eq!(goodness_h(5.0, 1.0, 3.0, 2.0, 10.0), 21.0);
    }

    proptest! {
        #[test]
        fn cheaper_improvement_outranks_any_ratio(
            fz in 0u32..100, cz in 1u32..100,
            gain in 1u32..50, saving in 0u32..100,
            fy in 0u32..1000, extra in 1u32..100,
        ) {
            let (fz, cz) = (fz as f64, cz as f64);
            let cheaper = goodness_h(fz + gain as f64, (cz - saving as f64).max(0.0), fz, cz, DEFAULT_GOODNESS_C);
            let pricier = goodness_h(fy as f64, cz + extra as f64, fz, cz, DEFAULT_GOODNESS_C);
            prop_assert!(cheaper > pricier);
        }
    }
}
