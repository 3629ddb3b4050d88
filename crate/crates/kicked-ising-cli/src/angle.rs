//! Angle arguments: plain decimals plus `pi` expressions such as `pi/4`,
//! `-pi/2`, or `3pi/4`, so τ = π/4 is representable without user-side
//! rounding.

use std::f64::consts::PI;

pub fn parse_angle(raw: &str) -> Result<f64, String> {
    let s = raw.trim().to_ascii_lowercase();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    if let Some(idx) = body.find("pi") {
        let (coef_str, rest) = body.split_at(idx);
        let rest = &rest[2..];
        let coef = if coef_str.is_empty() {
            1.0
        } else {
            let c = coef_str.strip_suffix('*').unwrap_or(coef_str);
            c.parse::<f64>().map_err(|_| format!("bad coefficient in angle '{raw}'"))?
        };
        let den = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            let d: f64 = d.parse().map_err(|_| format!("bad denominator in angle '{raw}'"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in angle '{raw}'"));
            }
            d
        } else {
            return Err(format!("cannot parse angle '{raw}'"));
        };
        Ok(sign * coef * PI / den)
    } else {
        body.parse::<f64>()
            .map_err(|_| format!("cannot parse angle '{raw}'"))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(sign * v)
                } else {
                    Err(format!("angle '{raw}' is not finite"))
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_fractions() {
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("pi/8").unwrap(), PI / 8.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.24pi").unwrap(), 0.24 * PI);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("-1.25").unwrap(), -1.25);
        assert_eq!(parse_angle(" 1e-3 ").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("").is_err());
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("nan").is_err());
        assert!(parse_angle("two").is_err());
    }
}
