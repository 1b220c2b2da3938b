//! Cantor pairing and the two stage schedules built from it.

/// Cantor pairing `N × N → N`.
pub fn pair(x: usize, y: usize) -> usize {
    (x + y) * (x + y + 1) / 2 + y
}

/// Inverse of [`pair`].
pub fn unpair(z: usize) -> (usize, usize) {
    let w = ((8 * z as u128 + 1).isqrt() as usize - 1) / 2;
    let y = z - w * (w + 1) / 2;
    (w - y, y)
}

/// `σ(i) = (vertex slot, formula index, repetition)`.
pub fn sigma(i: usize) -> (usize, usize, usize) {
    let (v, rest) = unpair(i);
    let (f, k) = unpair(rest);
    (v, f, k)
}

/// `ς(i) = (vertex slot, vertex slot, formula index, formula index, repetition)`.
pub fn varsigma(i: usize) -> (usize, usize, usize, usize, usize) {
    let (x, rest) = unpair(i);
    let (z, rest) = unpair(rest);
    let (b, rest) = unpair(rest);
    let (c, k) = unpair(rest);
    (x, z, b, c, k)
}
