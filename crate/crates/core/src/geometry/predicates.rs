//! Exact orientation and incircle tests on integer coordinates.
//!
//! Coordinates are bounded by 2^53, so `orient2d` always fits in `i128`.
//! `incircle` is tried in checked `i128` first and redone with big integers
//! when an intermediate overflows.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

type P = [i64; 2];

/// Positive when `a, b, c` turn counter-clockwise.
pub fn orient2d(a: P, b: P, c: P) -> Ordering {
    let (ax, ay) = (a[0] as i128, a[1] as i128);
    let (bx, by) = (b[0] as i128 - ax, b[1] as i128 - ay);
    let (cx, cy) = (c[0] as i128 - ax, c[1] as i128 - ay);
    (bx * cy).cmp(&(by * cx))
}

/// Positive when `d` lies strictly inside the circle through the
/// counter-clockwise triangle `a, b, c`.
pub fn incircle(a: P, b: P, c: P, d: P) -> Ordering {
    incircle_i128(a, b, c, d).unwrap_or_else(|| incircle_big(a, b, c, d))
}

fn incircle_i128(a: P, b: P, c: P, d: P) -> Option<Ordering> {
    let rel = |p: P| (p[0] as i128 - d[0] as i128, p[1] as i128 - d[1] as i128);
    let (ax, ay) = rel(a);
    let (bx, by) = rel(b);
    let (cx, cy) = rel(c);
    let lift = |x: i128, y: i128| x.checked_mul(x)?.checked_add(y.checked_mul(y)?);
    let cross = |x1: i128, y1: i128, x2: i128, y2: i128| {
        x1.checked_mul(y2)?.checked_sub(y1.checked_mul(x2)?)
    };
    let t1 = lift(ax, ay)?.checked_mul(cross(bx, by, cx, cy)?)?;
    let t2 = lift(bx, by)?.checked_mul(cross(cx, cy, ax, ay)?)?;
    let t3 = lift(cx, cy)?.checked_mul(cross(ax, ay, bx, by)?)?;
    let det = t1.checked_add(t2)?.checked_add(t3)?;
    Some(det.cmp(&0))
}

fn incircle_big(a: P, b: P, c: P, d: P) -> Ordering {
    let rel = |p: P| {
        (
            BigInt::from(p[0]) - BigInt::from(d[0]),
            BigInt::from(p[1]) - BigInt::from(d[1]),
        )
    };
    let (ax, ay) = rel(a);
    let (bx, by) = rel(b);
    let (cx, cy) = rel(c);
    let la = &ax * &ax + &ay * &ay;
    let lb = &bx * &bx + &by * &by;
    let lc = &cx * &cx + &cy * &cy;
    let det = la * (&bx * &cy - &by * &cx) + lb * (&cx * &ay - &cy * &ax) + lc * (&ax * &by - &ay * &bx);
    if det.is_positive() {
        Ordering::Greater
    } else if det.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of `a - b·√3`.
pub fn sign_minus_sqrt3(a: i128, b: i128) -> Ordering {
    match (a.cmp(&0), b.cmp(&0)) {
        (_, Ordering::Equal) => a.cmp(&0),
        (Ordering::Equal, _) => 0.cmp(&b),
        (Ordering::Greater, Ordering::Less) => Ordering::Greater,
        (Ordering::Less, Ordering::Greater) => Ordering::Less,
        // Same signs: compare a² with 3b², flipped for negatives.
        (Ordering::Greater, _) => (a * a).cmp(&(3 * b * b)),
        (Ordering::Less, _) => (3 * b * b).cmp(&(a * a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIG: i64 = 1 << 53;

    #[test]
    fn orientation_signs() {
        assert_eq!(orient2d([0, 0], [1, 0], [0, 1]), Ordering::Greater);
        assert_eq!(orient2d([0, 0], [0, 1], [1, 0]), Ordering::Less);
        assert_eq!(orient2d([0, 0], [1, 1], [2, 2]), Ordering::Equal);
        assert_eq!(orient2d([-BIG, -BIG], [BIG, BIG], [BIG - 1, BIG]), Ordering::Greater);
    }

    #[test]
    fn incircle_signs() {
        let (a, b, c) = ([0, 0], [2, 0], [0, 2]);
        assert_eq!(incircle(a, b, c, [1, 1]), Ordering::Greater);
        assert_eq!(incircle(a, b, c, [2, 2]), Ordering::Equal);
        assert_eq!(incircle(a, b, c, [3, 3]), Ordering::Less);
    }

    #[test]
    fn incircle_falls_back_on_overflow() {
        let s = BIG;
        let (a, b, c) = ([-s, -s], [s, -s], [s, s]);
        assert!(incircle_i128(a, b, c, [-s, s]).is_none());
        assert_eq!(incircle(a, b, c, [-s, s]), Ordering::Equal);
        assert_eq!(incircle(a, b, c, [0, 0]), Ordering::Greater);
        assert_eq!(incircle(a, b, c, [-s, s - 1]), Ordering::Greater);
        assert_eq!(incircle(a, b, c, [-s - 1, s]), Ordering::Less);
        // Same configuration at small scale agrees with the i128 path.
        assert_eq!(incircle([-1, -1], [1, -1], [1, 1], [0, 0]), Ordering::Greater);
    }

    #[test]
    fn sqrt3_sign() {
        assert_eq!(sign_minus_sqrt3(2, 1), Ordering::Greater);
        assert_eq!(sign_minus_sqrt3(1, 1), Ordering::Less);
        assert_eq!(sign_minus_sqrt3(-2, -1), Ordering::Less);
        assert_eq!(sign_minus_sqrt3(-1, -1), Ordering::Greater);
        assert_eq!(sign_minus_sqrt3(0, 0), Ordering::Equal);
        assert_eq!(sign_minus_sqrt3(0, -1), Ordering::Greater);
        assert_eq!(sign_minus_sqrt3(5, 0), Ordering::Greater);
        // 1732/1000 < √3 < 1733/1000
        assert_eq!(sign_minus_sqrt3(1732, 1000), Ordering::Less);
        assert_eq!(sign_minus_sqrt3(1733, 1000), Ordering::Greater);
    }
}
