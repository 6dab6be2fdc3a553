//! Seeded random coefficient words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::c64;
use crate::opuc::VerblunskyWord;

/// Draws a period-`p` word with each `α_j` uniform on the disk of radius `radius_max`.
///
/// The angle is drawn first, then `u` with radius `radius_max * sqrt(u)`.
/// The stream is ChaCha8, so the result depends only on `(p, radius_max, seed)`.
pub fn random_word(p: usize, radius_max: f64, seed: u64) -> VerblunskyWord {
    assert!(radius_max > 0.0 && radius_max < 1.0, "radius_max must lie in (0, 1)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = (0..p)
        .map(|_| {
            let angle = rng.gen::<f64>() * std::f64::consts::TAU;
            let u: f64 = rng.gen();
            c64::from_polar(radius_max * u.sqrt(), angle)
        })
        .collect();
    VerblunskyWord::new(alpha).expect("sampled coefficients lie inside the disk")
}
