//! Hypergeometric sampling for very large populations.
//!
//! The box process draws without replacement from boxes holding up to 2^61
//! balls, far beyond what off-the-shelf samplers handle: their H2PE-style
//! setups subtract Stirling log-factorials of magnitude ~1e19, so every
//! significant digit cancels. Two methods are used instead, split by draw
//! count:
//!
//! - draws <= 256: ball-by-ball simulation with integer state; exact.
//! - larger draws: Devroye's universal rejection for discrete log-concave
//!   distributions (the hypergeometric is log-concave), which needs only
//!   the mode probability and pmf ratios. Log-binomials are computed in a
//!   cancellation-free Stirling form (entropy terms as b*ln(a/b) with
//!   ln1p for the near-unity ratio), keeping absolute log-pmf error near
//!   1e-5 even for 2^61 populations.
//!
//! Everything is seeded through SplitMix64; uniform f64s are the usual 53
//! high bits, so traces are reproducible bit-for-bit on one platform.

use crate::rng::SplitMix64;

const BALL_BY_BALL_LIMIT: u64 = 256;

/// Number of "ones" drawn when sampling `draws` balls without replacement
/// from a box of `ones` one-balls and `zeros` zero-balls.
pub fn sample_hypergeometric(ones: u64, zeros: u64, draws: u64, rng: &mut SplitMix64) -> u64 {
    let population = ones.checked_add(zeros).expect("population fits in u64");
    assert!(draws <= population, "cannot draw more than the box holds");
    // Degenerate supports.
    if draws == 0 || ones == 0 {
        return 0;
    }
    if zeros == 0 {
        return draws;
    }
    if draws == population {
        return ones;
    }
    if draws <= BALL_BY_BALL_LIMIT {
        sample_ball_by_ball(ones, zeros, draws, rng)
    } else {
        sample_rejection(ones, zeros, draws, rng)
    }
}

fn sample_ball_by_ball(mut ones: u64, mut zeros: u64, draws: u64, rng: &mut SplitMix64) -> u64 {
    let mut hit = 0u64;
    for drawn in 0..draws {
        if ones == 0 {
            break;
        }
        if zeros == 0 {
            // Only ones remain; the rest of the draws all hit.
            hit += draws - drawn;
            break;
        }
        if rng.below(ones + zeros) < ones {
            hit += 1;
            ones -= 1;
        } else {
            zeros -= 1;
        }
    }
    hit
}

/// Devroye rejection for the log-concave pmf
/// p(x) = C(ones, x) C(zeros, draws - x) / C(ones + zeros, draws):
/// with mode m and w = p(m), p(m + z) <= w * min(1, e^(1 - w|z|)), so a
/// uniform-center/geometric-tail proposal dominates with expected ~4
/// iterations.
fn sample_rejection(ones: u64, zeros: u64, draws: u64, rng: &mut SplitMix64) -> u64 {
    let population = ones + zeros;
    let lo = draws.saturating_sub(zeros);
    let hi = draws.min(ones);
    if lo == hi {
        return lo;
    }

    // Mode of the hypergeometric.
    let mode = (((draws + 1) as u128 * (ones + 1) as u128) / (population + 2) as u128) as u64;
    let mode = mode.clamp(lo, hi);
    let g = |x: u64| ln_binomial(ones, x) + ln_binomial(zeros, draws - x);
    let g_mode = g(mode);
    let ln_w = g_mode - ln_binomial(population, draws);
    // Slightly shrink w for the envelope: the dominating inequality needs
    // w <= p(mode), and the log computation carries ~1e-5 absolute error.
    let w = (ln_w.exp() * (1.0 - 1e-4)).clamp(1e-300, 1.0);

    let half_width = (1.0 / w).floor();
    let center_mass = 2.0 * half_width + 1.0;
    // Sum over z > half_width of e^(1 - w z), one tail.
    let tail_mass = (1.0 - w * (half_width + 1.0)).exp() / (-(-w).exp_m1());
    let total = center_mass + 2.0 * tail_mass;

    loop {
        let u = uniform(rng) * total;
        let (z, ln_env) = if u < center_mass {
            (u.floor() - half_width, 0.0)
        } else {
            let side = if u - center_mass < tail_mass { 1.0 } else { -1.0 };
            // Geometric tail via inversion.
            let j = (uniform_open(rng).ln() / -w).floor();
            let z = side * (half_width + 1.0 + j);
            (z, 1.0 - w * z.abs())
        };
        let x = mode as f64 + z;
        if x < lo as f64 || x > hi as f64 {
            continue;
        }
        let x = x as u64;
        // Accept iff v * envelope <= p(x)/p(mode).
        let ln_ratio = g(x) - g_mode;
        if uniform_open(rng).ln() + ln_env <= ln_ratio {
            return x;
        }
    }
}

/// Uniform in [0, 1) from the top 53 bits.
fn uniform(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Uniform in (0, 1], safe to take logs of.
fn uniform_open(rng: &mut SplitMix64) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / 9007199254740992.0)
}

const LN_2PI: f64 = 1.8378770664093453;

/// ln C(a, b), accurate in absolute terms (~1e-5 worst case) for a up to
/// 2^62. Small b runs the product directly; otherwise Stirling in the
/// entropy form b ln(a/b) + (a-b) ln(a/(a-b)), which never subtracts
/// large nearly-equal terms.
pub fn ln_binomial(a: u64, b: u64) -> f64 {
    if b > a {
        return f64::NEG_INFINITY;
    }
    let b = b.min(a - b);
    if b == 0 {
        return 0.0;
    }
    if b <= 40 {
        // ln prod_{i=1..b} (a - b + i) / i
        let mut acc = 0.0;
        for i in 1..=b {
            acc += ((a - b + i) as f64).ln() - (i as f64).ln();
        }
        return acc;
    }
    let af = a as f64;
    let bf = b as f64;
    let cf = (a - b) as f64;
    let entropy = bf * (af / bf).ln() - cf * (-bf / af).ln_1p();
    let half = 0.5 * (LN_2PI + bf.ln() + cf.ln() - af.ln());
    let series = |x: f64| 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x * x);
    entropy - half + series(af) - series(bf) - series(cf)
}
