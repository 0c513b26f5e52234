//! Exact dyadic rationals: integers divided by a power of two.
//!
//! Every exact expected cost in this crate is a sum of per-input integer
//! costs divided by 2^n, so a (numerator, power-of-two) pair represents it
//! without loss. Values are kept unreduced so that reports can print the
//! ambient-denominator form (e.g. `104/32` for a 5-variable function).

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// General nonnegative fraction for probabilities and tolerances
/// (p-random restriction rates, parity windows). Auto-reduced.
pub type Frac = num_rational::Ratio<u64>;

/// Parse `a/b`, a decimal like `0.25`, or an integer.
pub fn parse_frac(s: &str) -> crate::Result<Frac> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("{msg}: {s:?}"),
    };
    if let Some((a, b)) = s.split_once('/') {
        let num: u64 = a.trim().parse().map_err(|_| bad("bad fraction numerator"))?;
        let den: u64 = b.trim().parse().map_err(|_| bad("bad fraction denominator"))?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Frac::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad("bad decimal"))?
        };
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().map_err(|_| bad("bad decimal"))?;
        return Ok(Frac::new(int * scale + frac, scale));
    }
    let v: u64 = s.parse().map_err(|_| bad("bad number"))?;
    Ok(Frac::from_integer(v))
}

/// f64 view of a fraction (for display and analytic formulas).
pub fn frac_to_f64(f: &Frac) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

/// A nonnegative rational `num / 2^pow`, stored unreduced.
#[derive(Debug, Clone, Copy)]
pub struct Dyadic {
    num: u128,
    pow: u32,
}

impl Dyadic {
    pub fn new(num: u128, pow: u32) -> Self {
        assert!(pow < 100, "denominator exponent out of range");
        Dyadic { num, pow }
    }

    pub fn zero() -> Self {
        Dyadic { num: 0, pow: 0 }
    }

    pub fn from_int(v: u64) -> Self {
        Dyadic { num: v as u128, pow: 0 }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    /// The exponent k of the 2^k denominator.
    pub fn pow2(&self) -> u32 {
        self.pow
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (self.pow as f64).exp2()
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The unreduced fraction string, e.g. `104/32`; integers with pow 0
    /// print without a denominator.
    pub fn fraction_string(&self) -> String {
        if self.pow == 0 {
            format!("{}", self.num)
        } else {
            format!("{}/{}", self.num, 1u128 << self.pow)
        }
    }

    /// Decimal rendering with `digits` significant digits, rounding half
    /// up. Computed by exact integer scaling, so the output is a correct
    /// rounding of the true value.
    pub fn decimal_string(&self, digits: u32) -> String {
        assert!(digits > 0 && digits <= 30);
        if self.num == 0 {
            return "0".to_string();
        }
        // e = floor(log10(value)), found by exact comparison.
        let mut e: i32 = 0;
        while self.cmp_pow10(e + 1) != Ordering::Less {
            e += 1;
        }
        while self.cmp_pow10(e) == Ordering::Less {
            e -= 1;
        }
        // M = round(value * 10^(digits-1-e)), an integer in [10^(d-1), 10^d].
        let s = digits as i32 - 1 - e;
        let mut m: u128 = if s >= 0 {
            let q = self.num.checked_mul(pow10(s as u32)).expect("overflow");
            let floor = q >> self.pow;
            let rem = q - (floor << self.pow);
            // round half up
            if self.pow > 0 && rem >= (1u128 << (self.pow - 1)) {
                floor + 1
            } else {
                floor
            }
        } else {
            let d = pow10((-s) as u32)
                .checked_mul(1u128 << self.pow)
                .expect("overflow");
            (self.num + d / 2) / d
        };
        if m == pow10(digits) {
            m = pow10(digits - 1);
            e += 1;
        }
        let digit_str = m.to_string();
        debug_assert_eq!(digit_str.len(), digits as usize);
        if e >= digits as i32 - 1 {
            let zeros = (e - digits as i32 + 1) as usize;
            format!("{}{}", digit_str, "0".repeat(zeros))
        } else if e >= 0 {
            let point = (e + 1) as usize;
            format!("{}.{}", &digit_str[..point], &digit_str[point..])
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digit_str)
        }
    }

    /// Exact comparison of the value with 10^k (k may be negative).
    fn cmp_pow10(&self, k: i32) -> Ordering {
        if k >= 0 {
            // num / 2^pow vs 10^k  <=>  num vs 10^k * 2^pow
            match pow10(k as u32).checked_mul(1u128 << self.pow) {
                Some(rhs) => self.num.cmp(&rhs),
                None => Ordering::Less,
            }
        } else {
            // num / 2^pow vs 10^k  <=>  num * 10^-k vs 2^pow
            match self.num.checked_mul(pow10((-k) as u32)) {
                Some(lhs) => lhs.cmp(&(1u128 << self.pow)),
                None => Ordering::Greater,
            }
        }
    }
}

fn pow10(k: u32) -> u128 {
    10u128.pow(k)
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare a/2^p vs b/2^q by scaling to the common denominator.
        let (a, b) = if self.pow >= other.pow {
            (self.num, other.num << (self.pow - other.pow))
        } else {
            (self.num << (other.pow - self.pow), other.num)
        };
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fraction_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings() {
        assert_eq!(Dyadic::new(104, 5).fraction_string(), "104/32");
        assert_eq!(Dyadic::new(64, 4).fraction_string(), "64/16");
        assert_eq!(Dyadic::from_int(3).fraction_string(), "3");
    }

    #[test]
    fn equality_ignores_representation() {
        assert_eq!(Dyadic::new(104, 5), Dyadic::new(13, 2));
        assert_eq!(Dyadic::new(64, 4), Dyadic::from_int(4));
        assert!(Dyadic::new(7, 2) < Dyadic::from_int(2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dyadic::new(104, 5).decimal_string(12), "3.25000000000");
        assert_eq!(Dyadic::new(64, 4).decimal_string(12), "4.00000000000");
        assert_eq!(Dyadic::zero().decimal_string(12), "0");
        assert_eq!(Dyadic::new(1, 1).decimal_string(3), "0.500");
        assert_eq!(Dyadic::new(7, 3).decimal_string(4), "0.8750");
        // 1/1024 = 0.0009765625
        assert_eq!(Dyadic::new(1, 10).decimal_string(5), "0.00097656");
        // 255/256 = 0.99609375 -> 3 significant digits
        assert_eq!(Dyadic::new(255, 8).decimal_string(3), "0.996");
        assert_eq!(Dyadic::new(14, 3).decimal_string(12), "1.75000000000");
        assert_eq!(Dyadic::from_int(12345).decimal_string(3), "12300");
    }

    #[test]
    fn decimal_rounding_carry() {
        // 1023/1024 = 0.9990234375; 2 significant digits -> "1.0"
        assert_eq!(Dyadic::new(1023, 10).decimal_string(2), "1.0");
        // 0.09995... region: 1638/2^14 = 0.0999755859; 3 digits -> "0.100"
        assert_eq!(Dyadic::new(1638, 14).decimal_string(3), "0.100");
    }
}
