/// Signed Bernoulli numbers `B_{2k} = num/den` for `k = 1..=20`.
const EVEN_BERNOULLI: [(i128, i128); 20] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
];

/// Largest index with a tabulated Bernoulli number.
pub const MAX_BERNOULLI_INDEX: usize = 40;

/// Exact Bernoulli number `B_n` as a reduced fraction, with `B_1 = −1/2`.
pub fn bernoulli_fraction(n: usize) -> Option<(i128, i128)> {
    match n {
        0 => Some((1, 1)),
        1 => Some((-1, 2)),
        _ if n % 2 == 1 => Some((0, 1)),
        _ if n <= MAX_BERNOULLI_INDEX => Some(EVEN_BERNOULLI[n / 2 - 1]),
        _ => None,
    }
}

/// `B_n` as `f64`.
pub fn bernoulli(n: usize) -> Option<f64> {
    bernoulli_fraction(n).map(|(p, q)| p as f64 / q as f64)
}
