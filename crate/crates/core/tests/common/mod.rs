//! Brute-force oracles. Nothing here calls into the crate's algorithms; they
//! work on plain coefficient vectors so they can check the library
//! independently.

#![allow(dead_code, clippy::needless_range_loop)]

/// XOR convolution, straight from the definition.
pub fn mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    let mut out = vec![0; n];
    for g in 0..n {
        for a in 0..n {
            for b in 0..n {
                if a ^ b == g {
                    out[g] += x[a] * y[b];
                }
            }
        }
    }
    out
}

pub fn translate(g: usize, x: &[i64]) -> Vec<i64> {
    (0..x.len()).map(|h| x[g ^ h]).collect()
}

pub fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Every `{0,2}` vector of length `2^k` with `m[g] + m[c·g] = 2`, found by
/// scanning all `2^(2^k)` candidates.
pub fn sections(k: u32, c: usize) -> Vec<Vec<i64>> {
    let n = 1usize << k;
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let m: Vec<i64> = (0..n).map(|g| 2 * ((bits >> g) & 1) as i64).collect();
        if (0..n).all(|g| m[g] + m[c ^ g] == 2) {
            out.push(m);
        }
    }
    out.sort();
    out
}

pub fn stabilizer_size(x: &[i64]) -> usize {
    (0..x.len()).filter(|&g| translate(g, x) == x).count()
}

/// Largest `j` with every coefficient at least `2j`, by counting up.
pub fn tate(divisor: &[i64]) -> u32 {
    let mut j = 0;
    while divisor.iter().all(|&a| a >= 2 * (j as i64 + 1)) {
        j += 1;
    }
    j
}

/// Maximum number of disjoint pairs among `slots` with sum equal to the
/// all-2 vector, by exhaustive search over matchings.
pub fn max_pairs(slots: &[Vec<i64>]) -> u32 {
    fn go(used: &mut Vec<bool>, slots: &[Vec<i64>]) -> u32 {
        let Some(i) = used.iter().position(|u| !u) else {
            return 0;
        };
        used[i] = true;
        // leave slot i unpaired
        let mut best = go(used, slots);
        for j in i + 1..slots.len() {
            if !used[j] && slots[i].iter().zip(&slots[j]).all(|(a, b)| a + b == 2) {
                used[j] = true;
                best = best.max(1 + go(used, slots));
                used[j] = false;
            }
        }
        used[i] = false;
        best
    }
    go(&mut vec![false; slots.len()], slots)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `target` is an integer combination of `basis` with every
/// coefficient in `[-bound, bound]`, by enumerating the whole box.
pub fn in_box_span(basis: &[Vec<i64>], target: &[i64], bound: i64) -> Option<Vec<i64>> {
    let b = basis.len();
    let mut coeffs = vec![-bound; b];
    loop {
        let mut v = vec![0i64; target.len()];
        for (t, row) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += t * y;
            }
        }
        if v == target {
            return Some(coeffs);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == b {
                return None;
            }
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

/// Standard triquadratic data as raw vectors: `σ1 = 1, σ2 = 2, σ3 = 4`,
/// `c = 7`. Each `alpha_i` is twice the indicator of the index-2 subgroup
/// fixing it.
pub mod standard {
    pub const C: usize = 7;

    fn indicator(support: &[usize]) -> Vec<i64> {
        let mut v = vec![0; 8];
        for &g in support {
            v[g] = 2;
        }
        v
    }

    pub fn alpha1() -> Vec<i64> {
        indicator(&[0, 2, 4, 6])
    }
    pub fn alpha2() -> Vec<i64> {
        indicator(&[0, 1, 4, 5])
    }
    pub fn alpha3() -> Vec<i64> {
        indicator(&[0, 1, 2, 3])
    }
    pub fn alpha4() -> Vec<i64> {
        indicator(&[0, 3, 5, 6])
    }
    pub fn beta() -> Vec<i64> {
        indicator(&[0, 1, 2, 4])
    }
}
