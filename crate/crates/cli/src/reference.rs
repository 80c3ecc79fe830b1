//! Published residues of `P̃(s)` for the tabulated moduli.

use std::f64::consts::PI;

use circle_escape::{zeta_derivative, ComplexValue};

pub struct Expected {
    pub s: i64,
    /// Constant part of the residue.
    pub constant: f64,
    /// Coefficient of `ln Δ`, present only at the double pole.
    pub log: Option<f64>,
}

pub fn table(q: u64) -> Vec<Expected> {
    let zp2 = zeta_derivative(ComplexValue::new(-2.0, 0.0))
        .expect("ζ' at -2")
        .re;
    let zp1 = zeta_derivative(ComplexValue::new(-1.0, 0.0))
        .expect("ζ' at -1")
        .re;
    let (l2, l3, l5) = (2f64.ln(), 3f64.ln(), 5f64.ln());
    let pi2 = PI * PI;
    let plain = |s, constant| Expected {
        s,
        constant,
        log: None,
    };
    match q {
        1 => vec![
            plain(1, 2.0),
            plain(-1, -13.0 / 12.0),
            plain(-2, 3.0 / (2.0 * PI)),
            plain(-3, 119.0 / (5760.0 * pi2 * zp2)),
        ],
        2 => vec![
            plain(1, 1.0),
            plain(-1, -1.0 / 6.0),
            plain(-2, 0.0),
            plain(-3, -1.0 / (720.0 * pi2 * zp2)),
        ],
        3 => vec![
            plain(1, 1.0),
            plain(-1, -0.25 - 5.0 * l2 / (9.0 * l3)),
            plain(-2, 3.0 / (4.0 * PI)),
            plain(-3, 49.0 / (5120.0 * pi2 * zp2)),
        ],
        4 => vec![
            plain(1, 1.0),
            plain(-1, -1.0 / 3.0 - 11.0 * l3 / (16.0 * l2)),
            plain(-2, 3.0 / PI),
            plain(-3, 109.0 / (1620.0 * pi2 * zp2)),
        ],
        6 => vec![
            plain(1, 1.0),
            Expected {
                s: -1,
                constant: (5.0 * l5 * (10.0 * l3 - 7.0 * l5)
                    + l2 * (55.0 * l5 - 76.0 * l3)
                    + (10.0 * l5 - 8.0 * l2) * 12.0 * zp1)
                    / (72.0 * l2 * l3),
                log: Some(7.0 * (10.0 * l5 - 8.0 * l2) / (72.0 * l2 * l3)),
            },
            plain(-2, -3.0 / (2.0 * PI)),
            plain(-3, -79.0 / (6400.0 * pi2 * zp2)),
        ],
        _ => Vec::new(),
    }
}
