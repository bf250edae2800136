//! Numeric literals with an optional `pi` factor, and `start:stop:count` ranges.

/// Parses `2.5`, `1e-3`, `pi`, `4pi`, `-4*pi`, `pi/2`, `3pi/4`.
pub fn parse_real(src: &str) -> Result<f64, String> {
    let s = src.trim();
    let bad = || format!("invalid number `{src}`");
    let Some(at) = s.find("pi") else {
        let v: f64 = s.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let (head, tail) = (&s[..at], &s[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coefficient = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        t => t
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?,
    };
    let v = coefficient * std::f64::consts::PI / divisor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn parse_range(src: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = src.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("range `{src}` must look like start:stop:count"));
    };
    let start = parse_real(start)?;
    let stop = parse_real(stop)?;
    let count: usize = count
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("range count in `{src}` must be a positive integer"))?;
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect())
}

/// `count` log-spaced values from `start` to `stop` inclusive (both positive).
pub fn parse_log_range(src: &str) -> Result<Vec<f64>, String> {
    let linear = parse_range(src)?;
    let (first, last) = (linear[0], linear[linear.len() - 1]);
    if !(first > 0.0 && last > 0.0) {
        return Err(format!("log range `{src}` needs positive endpoints"));
    }
    let n = linear.len();
    if n == 1 {
        return Ok(vec![first]);
    }
    let (a, b) = (first.ln(), last.ln());
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                last
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

pub fn parse_point(src: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = src.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok([parse_real(x)?, parse_real(y)?]),
        _ => Err(format!("point `{src}` must look like x,y")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pi_literals() {
        assert_eq!(parse_real("4pi").unwrap(), 4.0 * PI);
        assert_eq!(parse_real("-4*pi").unwrap(), -4.0 * PI);
        assert_eq!(parse_real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_real("-pi").unwrap(), -PI);
        assert_eq!(parse_real(" 0.5 ").unwrap(), 0.5);
        for bad in ["", "4pix", "pi/0", "two", "inf", "pi/"] {
            assert!(parse_real(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1:1:1").unwrap(), vec![1.0]);
        assert_eq!(parse_range("1:2:2").unwrap(), vec![1.0, 2.0]);
        assert_eq!(parse_range("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_range("1:2").is_err());
        assert!(parse_range("1:2:0").is_err());
        let logs = parse_log_range("1e-2:1:3").unwrap();
        assert!((logs[1] - 0.1).abs() < 1e-15);
        assert!(parse_log_range("0:1:3").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("-0.5,0.75").unwrap(), [-0.5, 0.75]);
        assert!(parse_point("1").is_err());
    }
}
