//! Reference implementations used only by tests. None of them call the
//! library's algorithms; they work from raw arrays.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quiverlab_core::{ExchangeMatrix, IceQuiver, LaurentPoly};
use rand::Rng;

pub fn bce() -> ExchangeMatrix {
    quiverlab_core::data::qce()
}

/// Skew-symmetric matrices of rank 1..=max_n with entries in -max..=max.
pub fn matrix_strategy(max_n: usize, max: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-max..=max, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().unwrap();
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            ExchangeMatrix::new(rows).unwrap()
        })
    })
}

/// A matrix together with a sequence of valid vertices.
pub fn matrix_and_sequence(
    max_n: usize,
    max: i64,
    max_len: usize,
) -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    matrix_strategy(max_n, max).prop_flat_map(move |b| {
        let n = b.n();
        (Just(b), proptest::collection::vec(0..n, 0..=max_len))
    })
}

/// Acyclic quivers: arrows only from lower to higher index.
pub fn acyclic_strategy(max_n: usize, max: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().unwrap();
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            ExchangeMatrix::new(rows).unwrap()
        })
    })
}

/// Arrow-count multigraph on `n` mutable plus `f` frozen vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub n: usize,
    pub f: usize,
    /// `arrows[u][v]` = number of arrows u -> v.
    pub arrows: Vec<Vec<u64>>,
}

impl Multigraph {
    pub fn from_ice(q: &IceQuiver) -> Self {
        let (n, f) = (q.n(), q.frozen_count());
        let mut arrows = vec![vec![0u64; n + f]; n + f];
        for i in 0..n {
            for j in 0..n {
                let b = q.principal().get(i, j);
                if b > 0 {
                    arrows[i][j] = b as u64;
                }
            }
        }
        for r in 0..f {
            for i in 0..n {
                let c = q.frozen_entry(r, i);
                if c > 0 {
                    arrows[i][n + r] = c as u64;
                } else if c < 0 {
                    arrows[n + r][i] = c.unsigned_abs();
                }
            }
        }
        Self { n, f, arrows }
    }

    pub fn to_ice(&self) -> IceQuiver {
        let (n, f) = (self.n, self.f);
        let d = |u: usize, v: usize| self.arrows[u][v] as i64 - self.arrows[v][u] as i64;
        let principal =
            ExchangeMatrix::new((0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect())
                .unwrap();
        let frozen = (0..f).map(|r| (0..n).map(|i| d(i, n + r)).collect()).collect();
        IceQuiver::new(principal, frozen).unwrap()
    }

    fn frozen(&self, v: usize) -> bool {
        v >= self.n
    }

    /// The three-step rule: compose 2-paths through k, reverse arrows at k,
    /// cancel 2-cycles; arrows between frozen vertices are discarded.
    pub fn mutate(&self, k: usize) -> Self {
        let t = self.n + self.f;
        let mut a = self.arrows.clone();
        for i in 0..t {
            for j in 0..t {
                if i == j || i == k || j == k || (self.frozen(i) && self.frozen(j)) {
                    continue;
                }
                a[i][j] += self.arrows[i][k] * self.arrows[k][j];
            }
        }
        for v in 0..t {
            a[v][k] = self.arrows[k][v];
            a[k][v] = self.arrows[v][k];
        }
        for i in 0..t {
            for j in (i + 1)..t {
                let c = a[i][j].min(a[j][i]);
                a[i][j] -= c;
                a[j][i] -= c;
            }
        }
        Self {
            n: self.n,
            f: self.f,
            arrows: a,
        }
    }
}

/// Mutation via the multigraph rule, fully independent of the library.
pub fn oracle_mutate(q: &IceQuiver, k: usize) -> IceQuiver {
    Multigraph::from_ice(q).mutate(k).to_ice()
}

/// Colour of vertex i: Some(true) green, Some(false) red, None mixed.
pub fn oracle_green(q: &IceQuiver, i: usize) -> Option<bool> {
    let col: Vec<i64> = (0..q.frozen_count()).map(|r| q.frozen_entry(r, i)).collect();
    if col.iter().all(|&c| c >= 0) {
        Some(true)
    } else if col.iter().all(|&c| c <= 0) {
        Some(false)
    } else {
        None
    }
}

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let num: i64 = rng.random_range(-9..=9);
        let den: i64 = rng.random_range(1..=7);
        if num != 0 {
            return BigRational::new(num.into(), den.into());
        }
    }
}

/// Positive values keep every cluster variable nonzero under evaluation.
pub fn random_positive_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.random_range(1..=9);
    let den: i64 = rng.random_range(1..=7);
    BigRational::new(num.into(), den.into())
}

fn rpow(v: &BigRational, e: u64) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * v)
}

/// Replays `seq` on the framed quiver of `b` with numeric cluster and
/// coefficient values, using the multigraph rule for the quivers. Returns
/// the final cluster.
pub fn numeric_cluster(
    b: &ExchangeMatrix,
    seq: &[usize],
    x: &[BigRational],
    y: &[BigRational],
) -> Vec<BigRational> {
    let mut g = Multigraph::from_ice(&IceQuiver::frame(b));
    let n = b.n();
    let mut cl = x.to_vec();
    for &k in seq {
        let mut out = BigRational::one();
        let mut inc = BigRational::one();
        for v in 0..(n + g.f) {
            let val = if v < n { &cl[v] } else { &y[v - n] };
            out *= rpow(val, g.arrows[k][v]);
            inc *= rpow(val, g.arrows[v][k]);
        }
        cl[k] = (out + inc) / &cl[k];
        g = g.mutate(k);
    }
    cl
}

pub fn eval_poly(p: &LaurentPoly, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for (v, &e) in x.iter().zip(&m.x) {
            if e >= 0 {
                t *= rpow(v, e as u64);
            } else {
                t /= rpow(v, e.unsigned_abs());
            }
        }
        for (v, &e) in y.iter().zip(&m.y) {
            t *= rpow(v, e);
        }
        total += t;
    }
    total
}

/// Whether `f_k^m` divides the coefficient of `x_k^-m` in `p` for every m,
/// decided by substitution. `f_k = y_k M_out + M_in` is linear in `y_k` with
/// coprime monomial coefficients, so it is irreducible and `f_k^m` divides a
/// polynomial iff, as a polynomial in `y_k`, it has a root of order `m` at
/// `y_k = -M_in / M_out`. Checked at several random points.
pub fn oracle_adjacent_member(p: &LaurentPoly, b: &ExchangeMatrix, k: usize, trials: usize) -> bool {
    let n = b.n();
    let mut rng = rand::rng();
    for _ in 0..trials {
        let x: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let y: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let mut m_out = BigRational::one();
        let mut m_in = BigRational::one();
        for j in 0..n {
            let e = b.get(k, j);
            if e > 0 {
                m_out *= rpow(&x[j], e as u64);
            } else if e < 0 {
                m_in *= rpow(&x[j], e.unsigned_abs());
            }
        }
        let root = -m_in / m_out;
        // group terms by the power of x_k, keeping y_k symbolic
        let mut by_power: std::collections::BTreeMap<i64, Vec<BigRational>> = Default::default();
        for (mono, c) in p.terms() {
            let xk = mono.x[k];
            if xk >= 0 {
                continue;
            }
            let mut t = BigRational::from_integer(c.clone());
            for j in 0..n {
                if j != k {
                    let e = mono.x[j];
                    t = if e >= 0 {
                        t * rpow(&x[j], e as u64)
                    } else {
                        t / rpow(&x[j], e.unsigned_abs())
                    };
                }
                if j != k {
                    t *= rpow(&y[j], mono.y[j]);
                }
            }
            let d = mono.y[k] as usize;
            let poly = by_power.entry(xk).or_default();
            if poly.len() <= d {
                poly.resize(d + 1, BigRational::zero());
            }
            poly[d] += t;
        }
        for (power, poly) in by_power {
            let m = power.unsigned_abs() as usize;
            // derivatives 0..m of the y_k polynomial vanish at the root
            for order in 0..m {
                let mut val = BigRational::zero();
                for (d, c) in poly.iter().enumerate() {
                    if d < order {
                        continue;
                    }
                    let falling: i64 = ((d - order + 1)..=d).map(|v| v as i64).product();
                    val += c * BigRational::from_integer(BigInt::from(falling))
                        * rpow(&root, (d - order) as u64);
                }
                if !val.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Isomorphism by trying every permutation (small n only).
pub fn isomorphic(a: &ExchangeMatrix, b: &ExchangeMatrix) -> bool {
    let n = a.n();
    if n != b.n() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a.get(perm[i], perm[j]) == b.get(i, j))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of isomorphism classes reachable by mutation, exploring labeled
/// matrices exhaustively. Only for small finite classes.
pub fn brute_class_size(b: &ExchangeMatrix, limit: usize) -> Option<usize> {
    let mut seen = vec![b.clone()];
    let mut idx = 0;
    while idx < seen.len() {
        for k in 0..b.n() {
            let next = oracle_mutate(&IceQuiver::from_principal(seen[idx].clone()), k)
                .principal()
                .clone();
            if !seen.contains(&next) {
                seen.push(next);
                if seen.len() > limit {
                    return None;
                }
            }
        }
        idx += 1;
    }
    let mut reps: Vec<ExchangeMatrix> = Vec::new();
    for m in seen {
        if !reps.iter().any(|r| isomorphic(r, &m)) {
            reps.push(m);
        }
    }
    Some(reps.len())
}

/// Whether some simple directed path leads from `u` to `v` (length >= 1).
pub fn dfs_path(b: &ExchangeMatrix, u: usize, v: usize) -> bool {
    let n = b.n();
    let mut stack = vec![u];
    let mut seen = vec![false; n];
    while let Some(w) = stack.pop() {
        for t in 0..n {
            if b.get(w, t) > 0 {
                if t == v {
                    return true;
                }
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    false
}

/// An arrow lies on a bi-infinite path iff a directed cycle can be pumped
/// before it and after it.
pub fn oracle_bi_infinite(b: &ExchangeMatrix, i: usize, j: usize) -> bool {
    let n = b.n();
    let on_cycle = |c: usize| dfs_path(b, c, c);
    let up = (0..n).any(|c| on_cycle(c) && (c == i || dfs_path(b, c, i)));
    let down = (0..n).any(|d| on_cycle(d) && (d == j || dfs_path(b, j, d)));
    up && down
}

/// Exhaustive search for the shortest maximal green sequence, using only
/// the oracle rule.
pub fn oracle_shortest_mgs(b: &ExchangeMatrix, max_depth: usize) -> Option<Vec<usize>> {
    let n = b.n();
    let mut level = vec![(IceQuiver::frame(b), Vec::<usize>::new())];
    for _ in 0..=max_depth {
        for (q, path) in &level {
            if (0..n).all(|i| oracle_green(q, i) == Some(false)) {
                return Some(path.clone());
            }
        }
        let mut next = Vec::new();
        for (q, path) in &level {
            for k in 0..n {
                if oracle_green(q, k) == Some(true) {
                    let mut p = path.clone();
                    p.push(k);
                    next.push((oracle_mutate(q, k), p));
                }
            }
        }
        level = next;
    }
    None
}
