//! Inline argument syntax: vectors are comma-separated, rationals are `p`
//! or `p/q`, exterior forms are `coeff:i,j;coeff:k,l`, polynomials list
//! coefficients from the constant term up.

use crate::error::CliError;
use swcalc::extalg::ExtForm;
use swcalc::rational::{parse_q, Q};
use swcalc::stability::{HilbertPoly, Subsheaf};

fn bad(what: &str, s: &str) -> CliError {
    CliError::Usage(format!("invalid {what}: {s:?}"))
}

pub fn int_vec(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| bad("integer vector", s))
        })
        .collect()
}

pub fn rational(s: &str) -> Result<Q, CliError> {
    parse_q(s).ok_or_else(|| bad("rational", s))
}

pub fn rat_vec(s: &str) -> Result<Vec<Q>, CliError> {
    s.split(',')
        .map(|x| parse_q(x).ok_or_else(|| bad("rational vector", s)))
        .collect()
}

pub fn poly(s: &str) -> Result<HilbertPoly, CliError> {
    if s.trim() == "0" || s.trim().is_empty() {
        return Ok(HilbertPoly::zero());
    }
    Ok(HilbertPoly::new(rat_vec(s)?))
}

/// `rank:poly`, e.g. `1:0,0,1/2`.
pub fn subsheaf(s: &str) -> Result<Subsheaf, CliError> {
    let (rk, p) = s
        .split_once(':')
        .ok_or_else(|| bad("subsheaf (rank:coeffs)", s))?;
    let rank = rk
        .trim()
        .parse::<u32>()
        .map_err(|_| bad("subsheaf rank", s))?;
    Ok(Subsheaf {
        rank,
        poly: poly(p)?,
    })
}

/// Terms separated by `;`, each `coeff` or `coeff:i,j,...` with 1-based indices.
pub fn ext_form(rank: usize, s: &str) -> Result<ExtForm, CliError> {
    let mut out = ExtForm::zero(rank);
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (coeff, idx) = match term.split_once(':') {
            Some((c, i)) => (c, i.trim()),
            None => (term, ""),
        };
        let coeff = coeff
            .trim()
            .parse::<i64>()
            .map_err(|_| bad("form coefficient", term))?;
        let indices: Vec<usize> = if idx.is_empty() {
            Vec::new()
        } else {
            idx.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| bad("form index", term))
                })
                .collect::<Result<_, _>>()?
        };
        let mono = ExtForm::monomial(rank, &indices, coeff)?;
        out = out.add(&mono)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use swcalc::extalg::Blade;
    use swcalc::rational::ratio;

    #[test]
    fn parses() {
        assert_eq!(int_vec("-3, 1").unwrap(), vec![-3, 1]);
        assert_eq!(rat_vec("1/2,-1").unwrap(), vec![ratio(1, 2), ratio(-1, 1)]);
        assert!(int_vec("1,x").is_err());
        let f = ext_form(3, "2:2,1; 1").unwrap();
        assert_eq!(f.coefficient(Blade::from_indices(&[1, 2]).unwrap()), -2);
        assert_eq!(f.coefficient(Blade::SCALAR), 1);
        let s = subsheaf("1:0,0,1/2").unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.poly.degree(), Some(2));
    }
}
