//! Error functions and log-space helpers.

use statrs::function::erf as sf;

pub fn erf(x: f64) -> f64 {
    sf::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    sf::erfc(x)
}

/// `ln erfc(x)`, finite far into the right tail.
pub fn ln_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return erfc(x).ln();
    }
    let z = 1.0 / (2.0 * x * x);
    // asymptotic series 1 - z + 3z^2 - 15z^3 + 105z^4
    let series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
    -x * x - (x * std::f64::consts::PI.sqrt()).ln() + series.ln()
}

/// `erf(b) - erf(a)` without cancellation in the tails.
pub fn erf_diff(a: f64, b: f64) -> f64 {
    if a >= 0.0 && b >= 0.0 {
        erfc(a) - erfc(b)
    } else if a <= 0.0 && b <= 0.0 {
        erfc(-b) - erfc(-a)
    } else {
        erf(b) - erf(a)
    }
}

/// `ln(1 - e^x)` for `x < 0`.
pub fn ln_1m_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(e^a + e^b)`.
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^a - e^b)` for `a > b`; NaN otherwise.
pub fn ln_sub_exp(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    if b >= a {
        return if a == b { f64::NEG_INFINITY } else { f64::NAN };
    }
    a + ln_1m_exp(b - a)
}
