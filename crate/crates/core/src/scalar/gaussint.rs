//! Divisors of small Gaussian integers, for rational-root candidates.

/// Norms above this bound are not factored; callers treat the polynomial as unresolved.
const NORM_LIMIT: i128 = 1 << 50;

pub(crate) type GInt = (i128, i128);

fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn int_divisors(n: i128) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `z / w` when `w` divides `z` in ℤ[i].
pub(crate) fn gdiv(z: GInt, w: GInt) -> Option<GInt> {
    let n = w.0 * w.0 + w.1 * w.1;
    let re = z.0 * w.0 + z.1 * w.1;
    let im = z.1 * w.0 - z.0 * w.1;
    (re % n == 0 && im % n == 0).then(|| (re / n, im / n))
}

/// Every Gaussian integer dividing `z` (all associates included), or `None` when `z` is too large.
pub(crate) fn divisors(z: GInt) -> Option<Vec<GInt>> {
    let norm = z.0.checked_mul(z.0)?.checked_add(z.1.checked_mul(z.1)?)?;
    if norm == 0 || norm > NORM_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    for d in int_divisors(norm) {
        let r = isqrt(d);
        for x in -r..=r {
            let y2 = d - x * x;
            let y = isqrt(y2);
            if y * y != y2 {
                continue;
            }
            for w in [(x, y), (x, -y)] {
                if (w.1 != 0 || w == (x, y)) && gdiv(z, w).is_some() && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    Some(out)
}

/// One representative per associate class (first quadrant, real part positive).
pub(crate) fn normalize_unit(w: GInt) -> GInt {
    let mut w = w;
    for _ in 0..4 {
        if w.0 > 0 && w.1 >= 0 {
            return w;
        }
        w = (-w.1, w.0);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_of_two() {
        let mut d = divisors((2, 0)).unwrap();
        d.sort();
        // units (4), associates of 1+i (4), associates of 2 (4)
        assert_eq!(d.len(), 12);
        assert!(d.contains(&(1, 1)) && d.contains(&(0, -2)) && d.contains(&(-1, 0)));
    }

    #[test]
    fn divisors_of_five_split() {
        let d = divisors((5, 0)).unwrap();
        assert!(d.contains(&(2, 1)) && d.contains(&(1, 2)) && d.contains(&(5, 0)));
        // units, the eight elements of norm 5, associates of 5; 3+4i does not divide 5
        assert_eq!(d.len(), 16);
        assert!(!d.contains(&(3, 4)));
    }

    #[test]
    fn associates_normalize() {
        assert_eq!(normalize_unit((0, 3)), (3, 0));
        assert_eq!(normalize_unit((-1, -1)), (1, 1));
        assert_eq!(normalize_unit((1, -2)), (2, 1));
    }
}
