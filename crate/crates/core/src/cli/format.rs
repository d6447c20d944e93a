/// Formats `x` with 12 significant digits and no trailing zeros, switching to
/// scientific notation outside `[1e-5, 1e12)`.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(sig12(-0.25), "-0.25");
        assert_eq!(sig12(123456.789), "123456.789");
        assert_eq!(sig12(1.5e-9), "1.5e-9");
        assert_eq!(sig12(2.0f64.powi(45)), "3.51843720888e13");
        assert_eq!(sig12(0.1438410362258904), "0.143841036226");
    }
}
