use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

pub type BigRational = num_rational::BigRational;

/// Size of a rational in bits, numerator plus denominator.
pub fn bit_length(x: &BigRational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Parses `n` or `n/d` with optional sign. Denominators must be nonzero.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("not a rational number: {text:?}"),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Reduced-fraction text: `n` when the denominator is one, else `n/d`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-5").unwrap(), int(-5));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-6, 3)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = parse_rational("0/17").unwrap();
        assert!(z.denom().is_one());
        assert_eq!(bit_length(&z), 1);
    }
}
