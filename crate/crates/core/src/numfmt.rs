//! Twelve-significant-digit output. Lower ends of enclosures round down and
//! upper ends round up, so a printed enclosure still contains the value.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Nearest,
    Down,
    Up,
}

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64, dir: Direction) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: i64 = mantissa.replace('.', "").parse().expect("decimal mantissa");
    let scale = exp - (SIGNIFICANT_DIGITS as i32 - 1);
    let value = |m: i64| format!("{m}e{scale}").parse::<f64>().expect("decimal");
    let y = value(digits);
    match dir {
        Direction::Down if y > x => value(digits - 1),
        Direction::Up if y < x => value(digits + 1),
        _ => y,
    }
}

pub fn format_real(x: f64) -> String {
    format_dir(x, Direction::Nearest)
}

pub fn format_dir(x: f64, dir: Direction) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let y = round_sig(x, dir);
    let a = y.abs();
    if y != 0.0 && !(1e-5..1e15).contains(&a) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}

pub fn format_enclosure(lo: f64, hi: f64) -> String {
    format!(
        "[{}, {}]",
        format_dir(lo, Direction::Down),
        format_dir(hi, Direction::Up)
    )
}
