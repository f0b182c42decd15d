use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::Var;
use crate::arith::{rat, GaussianRational, Rational};

/// Values for the `4N` formal variables.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub z: Vec<GaussianRational>,
    pub w: Vec<GaussianRational>,
    pub xi: Vec<GaussianRational>,
    pub eta: Vec<GaussianRational>,
    /// `w = conj(z)` and `eta = conj(xi)`.
    pub diagonal: bool,
}

impl SamplePoint {
    pub fn diagonal(z: Vec<GaussianRational>, xi: Vec<GaussianRational>) -> Self {
        assert_eq!(z.len(), xi.len());
        let w = z.iter().map(GaussianRational::conj).collect();
        let eta = xi.iter().map(GaussianRational::conj).collect();
        SamplePoint { z, w, xi, eta, diagonal: true }
    }

    pub fn general(
        z: Vec<GaussianRational>,
        w: Vec<GaussianRational>,
        xi: Vec<GaussianRational>,
        eta: Vec<GaussianRational>,
    ) -> Self {
        SamplePoint { z, w, xi, eta, diagonal: false }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn value(&self, v: Var) -> GaussianRational {
        match v {
            Var::Z(j) => self.z[j].clone(),
            Var::W(j) => self.w[j].clone(),
            Var::Xi(j) => self.xi[j].clone(),
            Var::Eta(j) => self.eta[j].clone(),
        }
    }
}

fn list(v: &[GaussianRational]) -> String {
    v.iter().map(GaussianRational::to_text).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diagonal {
            write!(f, "z=({}) xi=({})", list(&self.z), list(&self.xi))
        } else {
            write!(f, "z=({}) w=({}) xi=({}) eta=({})", list(&self.z), list(&self.w), list(&self.xi), list(&self.eta))
        }
    }
}

/// A vector with coordinates on the `1/16` grid and norm at most `3/4`.
fn grid_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    let bound: Rational = rat(9, 16);
    loop {
        let v: Vec<GaussianRational> = (0..n)
            .map(|_| GaussianRational::new(rat(rng.gen_range(-12..=12), 16), rat(rng.gen_range(-12..=12), 16)))
            .collect();
        let norm: Rational = v.iter().map(GaussianRational::norm_sqr).sum();
        if norm <= bound {
            return v;
        }
    }
}

/// `count` seeded points inside the ball. Off the diagonal, `w` and `eta`
/// are drawn independently.
pub fn random_points(n: usize, count: usize, seed: u64, diagonal: bool) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z = grid_vector(&mut rng, n);
            let xi = grid_vector(&mut rng, n);
            if diagonal {
                SamplePoint::diagonal(z, xi)
            } else {
                let w = grid_vector(&mut rng, n);
                let eta = grid_vector(&mut rng, n);
                SamplePoint::general(z, w, xi, eta)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_seeded_and_inside() {
        let a = random_points(2, 10, 7, true);
        let b = random_points(2, 10, 7, true);
        assert_eq!(a, b);
        assert_ne!(a, random_points(2, 10, 8, true));
        for p in &a {
            let nz: Rational = p.z.iter().map(GaussianRational::norm_sqr).sum();
            assert!(nz <= rat(9, 16));
            assert_eq!(p.w[0], p.z[0].conj());
        }
    }
}
