use crate::error::{Error, Result};

/// Parses a univariate polynomial expression such as `x^2+2x+1`, `-3*w^2`
/// or `X^5+X`. Returns integer coefficients, constant term first. Any of the
/// characters in `vars` stands for the variable.
pub(crate) fn parse_poly_expr(input: &str, vars: &[char]) -> Result<Vec<i64>> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bad = || Error::Parse(format!("malformed polynomial `{input}`"));
    let mut coeffs: Vec<i64> = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let mut sign = 1i64;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad());
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            let digits: String = s[start..i].iter().collect();
            Some(digits.parse().map_err(|_| bad())?)
        } else {
            None
        };
        if coeff.is_some() && i < s.len() && s[i] == '*' {
            i += 1;
        }
        let mut degree = 0usize;
        if i < s.len() && vars.contains(&s[i]) {
            i += 1;
            degree = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    return Err(bad());
                }
                let digits: String = s[start..i].iter().collect();
                degree = digits.parse().map_err(|_| bad())?;
            }
        } else if coeff.is_none() {
            return Err(bad());
        }
        if degree > 4096 {
            return Err(Error::Parse(format!("degree {degree} too large")));
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] = coeffs[degree]
            .checked_add(sign * coeff.unwrap_or(1))
            .ok_or_else(bad)?;
    }
    Ok(coeffs)
}
