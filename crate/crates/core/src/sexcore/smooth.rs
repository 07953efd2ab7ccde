//! 60-smoothness and integer square roots over `BigUint`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Trial division stops here; a cofactor with no prime factor below this bound
/// is reported whole.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Removes every factor 2, 3 and 5 from `n`. Zero maps to zero.
pub fn strip_regular_factors(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut rest = n >> n.trailing_zeros().unwrap_or(0);
    for p in [3u32, 5] {
        let p = BigUint::from(p);
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest
}

/// True iff every prime factor of `n` is 2, 3 or 5. Zero is not smooth.
pub fn is_sixty_smooth(n: &BigUint) -> bool {
    !n.is_zero() && strip_regular_factors(n).is_one()
}

/// The smallest prime factor of `n` outside {2, 3, 5}, if any.
///
/// When the cofactor has no factor below the trial-division bound the whole
/// cofactor is returned, which is then either prime or a product of large primes.
pub fn first_irregular_factor(n: &BigUint) -> Option<BigUint> {
    let rest = strip_regular_factors(n);
    if rest.is_one() || rest.is_zero() {
        return None;
    }
    // 7, 11, 13, ... stepping over multiples of 2 and 3.
    let mut d = 7u64;
    let mut step = 4u64;
    while d < TRIAL_DIVISION_LIMIT && BigUint::from(d * d) <= rest {
        if (&rest % d).is_zero() {
            return Some(BigUint::from(d));
        }
        d += step;
        step = 6 - step;
    }
    Some(rest)
}

/// Floor of the square root, by Newton iteration from above.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `Some(r)` with `r * r == n`, or `None` when `n` is not a perfect square.
pub fn exact_isqrt(n: &BigUint) -> Option<BigUint> {
    // Squares are 0, 1, 4 or 9 mod 16.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 0xf;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}
