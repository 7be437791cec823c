#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roadwidth::model::{ModelParams, State};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(g: f64) -> ModelParams {
    ModelParams::new(g).unwrap()
}

pub fn st(u: f64, rho: f64, a: f64) -> State {
    State::new(u, rho, a).unwrap()
}

pub fn random_gamma<R: Rng>(r: &mut R) -> f64 {
    r.gen_range(1.1..4.0)
}

/// Random state in D2: u = c * gamma * rho^gamma with c in (1.05, 4).
pub fn random_d2<R: Rng>(r: &mut R, g: f64, a: f64) -> State {
    let rho: f64 = r.gen_range(0.1..2.0);
    let c = r.gen_range(1.05..4.0);
    st(c * g * rho.powf(g), rho, a)
}

/// Random state in D1: u = c * gamma * rho^gamma with c in (0.05, 0.95).
pub fn random_d1<R: Rng>(r: &mut R, g: f64, a: f64) -> State {
    let rho: f64 = r.gen_range(0.1..2.0);
    let c = r.gen_range(0.05..0.95);
    st(c * g * rho.powf(g), rho, a)
}

/// Classical two-wave Aw-Rascle solution (constant width), written from the
/// closed forms only: a first-family wave to `u = u+` on `u + rho^g = w-`,
/// then a contact; a vacuum opens when `u+ > w-`. Returns `(u, rho)` at `xi`.
pub fn classical_ar_sample(l: &State, r: &State, g: f64, xi: f64) -> (f64, f64) {
    let w = l.u + l.rho.powf(g);
    let head = l.u - g * l.rho.powf(g);
    let fan = |xi: f64| {
        let rho = ((w - xi) / (1.0 + g)).powf(1.0 / g);
        (w - rho.powf(g), rho)
    };
    if r.u > w {
        return if xi < head {
            (l.u, l.rho)
        } else if xi < w {
            fan(xi)
        } else if xi < r.u {
            (xi, 0.0)
        } else {
            (r.u, r.rho)
        };
    }
    let rho_m = (w - r.u).powf(1.0 / g);
    if xi >= r.u {
        return (r.u, r.rho);
    }
    if rho_m > l.rho {
        let sigma = (rho_m * r.u - l.rho * l.u) / (rho_m - l.rho);
        if xi < sigma {
            (l.u, l.rho)
        } else {
            (r.u, rho_m)
        }
    } else {
        let tail = r.u - g * rho_m.powf(g);
        if xi < head {
            (l.u, l.rho)
        } else if xi < tail {
            fan(xi)
        } else {
            (r.u, rho_m)
        }
    }
}
