//! Permutations in 0-based one-line notation.
//!
//! A permutation `p` of `n` points is the slice `[p(0), .., p(n-1)]`. Products
//! compose as functions: `(xy)(i) = x(y(i))`, so `y` acts first.

use crate::{Error, Result};

pub const MAX_DEGREE: usize = 8;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn identity(n: usize) -> Vec<u8> {
    (0..n as u8).collect()
}

pub fn compose_into(x: &[u8], y: &[u8], out: &mut [u8]) {
    for (o, &yi) in out.iter_mut().zip(y) {
        *o = x[yi as usize];
    }
}

pub fn compose(x: &[u8], y: &[u8]) -> Vec<u8> {
    let mut out = vec![0; x.len()];
    compose_into(x, y, &mut out);
    out
}

pub fn inverse(p: &[u8]) -> Vec<u8> {
    let mut out = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        out[pi as usize] = i as u8;
    }
    out
}

pub fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[j] < p[i] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Position of `p` in the lexicographic order of all permutations of its degree.
pub fn lex_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn lex_unrank(n: usize, mut rank: usize) -> Vec<u8> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = identity(n);
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Indices `j` of adjacent transpositions `s_j = (j j+1)` with
/// `p = s_{w[k-1]} ∘ .. ∘ s_{w[0]}`, found by bubble-sorting the one-line notation.
pub fn adjacent_word(p: &[u8]) -> Vec<usize> {
    let mut line = p.to_vec();
    let mut word = Vec::new();
    let n = line.len();
    for pass in 0..n {
        let mut swapped = false;
        for j in 0..n.saturating_sub(1 + pass) {
            if line[j] > line[j + 1] {
                line.swap(j, j + 1);
                word.push(j);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u8>> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let mut perm = identity(degree);
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty permutation"));
    }
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = open.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let points = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&p| (1..=degree).contains(&p))
                    .ok_or_else(|| err("point out of range"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cycle = identity(degree);
        for (k, &p) in points.iter().enumerate() {
            let next = points[(k + 1) % points.len()];
            if cycle[p - 1] != (p - 1) as u8 {
                return Err(err("repeated point in cycle"));
            }
            cycle[p - 1] = (next - 1) as u8;
        }
        if points.len() == 1 {
            cycle[points[0] - 1] = (points[0] - 1) as u8;
        }
        // Cycles written left to right compose right to left.
        perm = compose(&perm, &cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

pub fn format_cycles(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_lexicographic_enumeration() {
        for n in 1..=5 {
            let mut all: Vec<Vec<u8>> = (0..factorial(n) as usize)
                .map(|r| lex_unrank(n, r))
                .collect();
            let sorted = {
                let mut s = all.clone();
                s.sort();
                s
            };
            assert_eq!(all, sorted);
            for (r, p) in all.iter().enumerate() {
                assert_eq!(lex_rank(p), r);
            }
            all.dedup();
            assert_eq!(all.len() as u64, factorial(n));
        }
    }

    #[test]
    fn lexicographic_neighbours_have_opposite_parity() {
        for r in (0..720).step_by(2) {
            assert_ne!(is_even(&lex_unrank(6, r)), is_even(&lex_unrank(6, r + 1)));
        }
    }

    #[test]
    fn adjacent_word_reconstructs_permutation() {
        for r in 0..120 {
            let p = lex_unrank(5, r);
            let mut acc = identity(5);
            for &j in &adjacent_word(&p) {
                let mut s = identity(5);
                s.swap(j, j + 1);
                acc = compose(&s, &acc);
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn cycle_notation() {
        let p = parse_cycles("(1 2 3)", 4).unwrap();
        assert_eq!(p, vec![1, 2, 0, 3]);
        assert_eq!(format_cycles(&p), "(1 2 3)");
        let q = parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(q, vec![1, 0, 3, 2]);
        assert_eq!(parse_cycles("()", 3).unwrap(), identity(3));
        assert!(parse_cycles("(1 5)", 4).is_err());
        assert!(parse_cycles("1 2", 4).is_err());
    }
}
