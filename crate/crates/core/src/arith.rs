//! Integer helpers shared by the field, ideal and group modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Prime factorisation by trial division, primes ascending with multiplicity.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// All squarefree positive divisors of `n`, ascending.
pub fn squarefree_divisors(n: u64) -> Vec<u64> {
    let primes = prime_divisors(n);
    let mut out = vec![1u64];
    for p in primes {
        let more: Vec<u64> = out.iter().map(|d| d * p).collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

/// `s` with `n = s * k^2` and `s` squarefree; the sign of `n` is kept.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= &p;
        }
        p += 1;
    }
    s *= rest;
    if n.is_negative() {
        -s
    } else {
        s
    }
}

pub fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = is_square(q.numer())?;
    let d = is_square(q.denom())?;
    Some(BigRational::new(n, d))
}

/// Solves `a*x - b*y = 1` with `x` the least positive solution.
pub fn bezout_min_positive(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt)> {
    debug_assert!(a.is_positive() && b.is_positive());
    let e = a.extended_gcd(b);
    if !e.gcd.is_one() {
        return None;
    }
    // a*e.x + b*e.y = 1, so x = e.x mod b
    let mut x = e.x.mod_floor(b);
    if x.is_zero() {
        x = b.clone();
    }
    let num = a * &x - BigInt::one();
    let (y, r) = num.div_rem(b);
    debug_assert!(r.is_zero());
    Some((x, y))
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

pub fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(97), vec![(97, 1)]);
    }

    #[test]
    fn squarefree_divisors_of_24() {
        assert_eq!(squarefree_divisors(24), vec![1, 2, 3, 6]);
        assert_eq!(squarefree_divisors(5), vec![1, 5]);
    }

    #[test]
    fn squarefree_part_keeps_odd_exponents() {
        assert_eq!(squarefree_part(&int(8)), int(2));
        assert_eq!(squarefree_part(&int(36)), int(1));
        assert_eq!(squarefree_part(&int(-12)), int(-3));
    }

    #[test]
    fn bezout_minimal() {
        let (x, y) = bezout_min_positive(&int(2), &int(15)).unwrap();
        assert_eq!((x, y), (int(8), int(1)));
        let (x, y) = bezout_min_positive(&int(2), &int(1)).unwrap();
        assert_eq!((x, y), (int(1), int(1)));
        assert!(bezout_min_positive(&int(4), &int(6)).is_none());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
    }
}
