#![allow(dead_code)]

use rand::Rng;
use swcalc::topology::{ManifoldTopology, TripleCup};

/// A unimodular form built as `Pᵀ (⊕ blocks) P` together with data known by
/// construction, independent of the lattice routines under test.
pub struct RandomLattice {
    pub form: Vec<Vec<i64>>,
    /// Characteristic vector mod 2, transported through `P⁻¹`.
    pub w2: Vec<bool>,
    pub positive: usize,
    pub negative: usize,
}

fn neg_e8() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        m[i][j] = 1;
        m[j][i] = 1;
    }
    m
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

pub fn random_unimodular<R: Rng>(rng: &mut R, max_size: usize) -> RandomLattice {
    let mut diag: Vec<Vec<i64>> = Vec::new();
    let mut w: Vec<i64> = Vec::new();
    let (mut pos, mut neg) = (0, 0);
    let target = rng.gen_range(1..=max_size);
    while w.len() < target {
        let room = target - w.len();
        let kind = rng.gen_range(0..if room >= 8 { 4 } else { 3 });
        let (block, bw, p, n): (Vec<Vec<i64>>, Vec<i64>, usize, usize) = match kind {
            0 => (vec![vec![1]], vec![1], 1, 0),
            1 => (vec![vec![-1]], vec![1], 0, 1),
            2 if room >= 2 => (vec![vec![0, 1], vec![1, 0]], vec![0, 0], 1, 1),
            2 => (vec![vec![1]], vec![1], 1, 0),
            _ => (neg_e8(), vec![0; 8], 0, 8),
        };
        let off = diag.len();
        let size = block.len();
        for row in diag.iter_mut() {
            row.extend(std::iter::repeat_n(0, size));
        }
        for brow in block {
            let mut row = vec![0i64; off];
            row.extend(brow);
            diag.push(row);
        }
        w.extend(bw);
        pos += p;
        neg += n;
    }
    let n = w.len();
    // Random unimodular base change P and its inverse from elementary moves.
    let mut p = identity(n);
    let mut p_inv = identity(n);
    if n > 1 {
        for _ in 0..rng.gen_range(0..=2 * n) {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut e = identity(n);
            e[i][j] = k;
            let mut e_inv = identity(n);
            e_inv[i][j] = -k;
            p = matmul(&p, &e);
            p_inv = matmul(&e_inv, &p_inv);
        }
    }
    let form = matmul(&matmul(&transpose(&p), &diag), &p);
    let w2 = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| p_inv[i][j] * w[j])
                .sum::<i64>()
                .rem_euclid(2)
                == 1
        })
        .collect();
    RandomLattice {
        form,
        w2,
        positive: pos,
        negative: neg,
    }
}

pub fn topology_from(lat: &RandomLattice, b1: usize) -> ManifoldTopology {
    let b2 = lat.form.len();
    ManifoldTopology {
        name: "random".into(),
        b1,
        bplus: lat.positive,
        bminus: lat.negative,
        euler: 2 - 2 * b1 as i64 + b2 as i64,
        signature: lat.positive as i64 - lat.negative as i64,
        form: lat.form.clone(),
        w2: lat.w2.clone(),
        tors2_order: 1,
        triple_cup: TripleCup::zeros(b1, b2),
    }
}

/// A characteristic vector with entries in `[-5, 5]`.
pub fn random_characteristic<R: Rng>(rng: &mut R, w2: &[bool]) -> Vec<i64> {
    w2.iter()
        .map(|&odd| loop {
            let x: i64 = rng.gen_range(-5..=5);
            if (x.rem_euclid(2) == 1) == odd {
                break x;
            }
        })
        .collect()
}

/// `xᵀ Q x` by the textbook double sum.
pub fn square_oracle(form: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..x.len() {
        for j in 0..x.len() {
            s += x[i] * form[i][j] * x[j];
        }
    }
    s
}

pub fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Runs the CLI in-process with `swcalc` as argv[0].
pub fn cli(args: &[&str]) -> swcalc_cli::Outcome {
    swcalc_cli::run(std::iter::once("swcalc").chain(args.iter().copied()))
}
