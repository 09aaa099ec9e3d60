//! `%.12g`-style float formatting for the CSV emitters: 12 significant
//! digits, trailing zeros trimmed, C-style exponent when the magnitude
//! calls for it. Byte-stable across runs by construction.

const SIG: i32 = 12;

pub fn g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_owned();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    // Round to 12 significant digits first; the exponent of the *rounded*
    // value decides between decimal and scientific form.
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific form");
    let exp: i32 = exp.parse().expect("integer exponent");

    if !(-4..SIG).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_owned();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_owned()
}
