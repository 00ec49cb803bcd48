//! Benchmark inputs shared by the criterion benches.

use quiverlab_core::ExchangeMatrix;

/// Oriented cycle on `n` vertices with every arrow doubled, then the
/// triangle on the first three vertices filled in.
pub fn doubled_cycle(n: usize) -> ExchangeMatrix {
    let mut arrows: Vec<(usize, usize, i64)> = (0..n).map(|i| (i, (i + 1) % n, 2)).collect();
    if n > 3 {
        arrows.push((0, 2, 1));
    }
    ExchangeMatrix::from_arrows(n, arrows).expect("valid arrows")
}

/// Linearly oriented path, acyclic and of finite type.
pub fn path(n: usize) -> ExchangeMatrix {
    ExchangeMatrix::from_arrows(n, (1..n).map(|i| (i - 1, i, 1))).expect("valid arrows")
}
