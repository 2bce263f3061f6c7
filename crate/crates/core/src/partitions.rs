//! Integer partitions stored by part multiplicities, plus the small
//! number-theory helpers (divisors, Moebius, sigma) that the partition-indexed
//! sums and the eta-exponent derivation need.

use num_integer::Integer;

/// A partition `(1^{a_1} 2^{a_2} ...)` stored by multiplicities:
/// `multiplicities[i]` is the number of parts equal to `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    multiplicities: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition {
            multiplicities: Vec::new(),
        }
    }

    pub fn from_multiplicities(mut multiplicities: Vec<u32>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Partition { multiplicities }
    }

    /// The number being partitioned, `sum i * a_i`.
    pub fn n(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u32 + 1) * a)
            .sum()
    }

    /// The number of parts `|alpha| = sum a_i`.
    pub fn num_parts(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `gcd { i : a_i != 0 }`, with the convention that the empty partition
    /// has gcd 0 (the identity tag of the gcd-tagged product).
    pub fn gcd_parts(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .fold(0u32, |g, (i, _)| g.gcd(&(i as u32 + 1)))
    }

    /// Multiplicity of the part `size` (1-based).
    pub fn multiplicity(&self, size: u32) -> u32 {
        assert!(size >= 1);
        self.multiplicities
            .get(size as usize - 1)
            .copied()
            .unwrap_or(0)
    }

    /// Iterates `(part size, multiplicity)` over parts that occur.
    pub fn parts_with_multiplicity(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i as u32 + 1, a))
    }

    /// All partitions of `n` in deterministic order (descending
    /// lexicographic by part lists).
    pub fn enumerate(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut mult = vec![0u32; n as usize];
        descend(n, n, &mut mult, &mut out);
        out
    }
}

fn descend(remaining: u32, max_part: u32, mult: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_multiplicities(mult.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        mult[part as usize - 1] += 1;
        descend(remaining - part, part, mult, out);
        mult[part as usize - 1] -= 1;
    }
}

/// `p(n)` by the pentagonal number recurrence; used as an independent count
/// for the enumerator.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum: i128 = 0;
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                sum += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = u64::try_from(sum).expect("pentagonal recurrence went negative");
    }
    table[n]
}

/// `p(n, d)`: partitions of `n` into exactly `d` parts,
/// via `p(n, d) = p(n-1, d-1) + p(n-d, d)`.
pub fn count_into_exactly_parts(n: u32, d: u32) -> u64 {
    let (n, d) = (n as usize, d as usize);
    let mut table = vec![vec![0u64; d + 1]; n + 1];
    table[0][0] = 1;
    for i in 1..=n {
        for j in 1..=d.min(i) {
            table[i][j] = table[i - 1][j - 1] + if i >= j { table[i - j][j] } else { 0 };
        }
    }
    table[n][d]
}

/// `P(x, y)`: partitions of `x` into parts of size at most `y`.
pub fn count_parts_at_most(x: u32, y: u32) -> u64 {
    let (x, y) = (x as usize, y as usize);
    let mut table = vec![0u64; x + 1];
    table[0] = 1;
    for part in 1..=y.min(x.max(1)) {
        for total in part..=x {
            table[total] += table[total - part];
        }
    }
    table[x]
}

/// Sorted list of the positive divisors of `n`.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The Moebius function.
pub fn moebius(n: u32) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Sum of divisors `sigma_1(n)`.
pub fn sigma1(n: u32) -> u64 {
    divisors(n).into_iter().map(u64::from).sum()
}
