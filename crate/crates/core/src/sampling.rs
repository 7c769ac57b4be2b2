//! Random ensembles for randomized invariant checks.

use rand::Rng;

use crate::ensemble::QubitEnsemble;
use crate::qstate::BlochVector;

/// Uniform point in the closed unit ball, by rejection from the cube.
pub fn uniform_ball<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if v.norm_sq() <= 1.0 {
            return v;
        }
    }
}

/// Uniform direction on the unit sphere.
pub fn uniform_sphere<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let v = uniform_ball(rng);
        if v.norm_sq() > 1e-6 {
            return v.normalized().expect("nonzero");
        }
    }
}

/// λ₀ uniform on [0, 1], both Bloch vectors uniform in the ball.
pub fn random_ensemble<R: Rng + ?Sized>(rng: &mut R) -> QubitEnsemble {
    let lambda0 = rng.gen_range(0.0..=1.0);
    QubitEnsemble::with_prior(lambda0, uniform_ball(rng), uniform_ball(rng))
        .expect("sampled ensemble is valid")
}

/// λ₀ uniform on [0, 1], both states pure with uniform directions.
pub fn random_pure_ensemble<R: Rng + ?Sized>(rng: &mut R) -> QubitEnsemble {
    let lambda0 = rng.gen_range(0.0..=1.0);
    QubitEnsemble::with_prior(lambda0, uniform_sphere(rng), uniform_sphere(rng))
        .expect("sampled ensemble is valid")
}
