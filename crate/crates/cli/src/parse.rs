use num_complex::Complex64;

/// Parses `2.5`, `-3`, `2+i`, `1.5-0.5i` or `i`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>()
        .ok()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| format!("cannot parse '{s}' as a complex number"))
}

/// A complex value that must be a nonnegative integer.
pub fn nonneg_int(z: Complex64, name: &str) -> Result<u32, String> {
    if z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0 && z.re <= u32::MAX as f64 {
        Ok(z.re as u32)
    } else {
        Err(format!("--{name} must be a nonnegative integer here, got {z}"))
    }
}

pub fn real_positive(z: Complex64, name: &str) -> Result<f64, String> {
    if z.im == 0.0 && z.re > 0.0 {
        Ok(z.re)
    } else {
        Err(format!("--{name} must be a positive real number here, got {z}"))
    }
}

pub fn u32_of(n: i64, name: &str) -> Result<u32, String> {
    u32::try_from(n).map_err(|_| format!("--{name} must be a nonnegative integer here, got {n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(complex("2.5").unwrap(), c(2.5, 0.0));
        assert_eq!(complex("-3").unwrap(), c(-3.0, 0.0));
        assert_eq!(complex("2+i").unwrap(), c(2.0, 1.0));
        assert_eq!(complex("2+1i").unwrap(), c(2.0, 1.0));
        assert_eq!(complex("1.5-0.5i").unwrap(), c(1.5, -0.5));
        assert_eq!(complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
        assert!(complex("abc").is_err());
        assert!(complex("inf").is_err());
    }

    #[test]
    fn integer_views() {
        assert_eq!(nonneg_int(Complex64::new(4.0, 0.0), "a").unwrap(), 4);
        assert!(nonneg_int(Complex64::new(2.5, 0.0), "a").is_err());
        assert!(nonneg_int(Complex64::new(-1.0, 0.0), "a").is_err());
        assert!(real_positive(Complex64::new(0.7, 0.1), "z").is_err());
        assert!(u32_of(-2, "n").is_err());
    }
}
