//! Permutations of `0..n` stored as image vectors: `p[i]` is the image of `i`.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a ∘ b`: apply `b` first, then `a`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// +1 for even, -1 for odd permutations.
pub fn parity(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Points moved by `p`.
pub fn support(p: &[usize]) -> Vec<usize> {
    p.iter().enumerate().filter(|(i, &x)| *i != x).map(|(i, _)| i).collect()
}

/// Advances to the next permutation in lexicographic order; false at the last one.
pub fn next_lex(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut p = identity(n);
    let mut out = vec![p.clone()];
    while next_lex(&mut p) {
        out.push(p.clone());
    }
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank in `0..n!`.
pub fn rank(p: &[usize]) -> u64 {
    let n = p.len();
    let mut r = 0u64;
    let mut used = 0u64;
    for (i, &x) in p.iter().enumerate() {
        let smaller = (0..x).filter(|&y| used & (1 << y) == 0).count() as u64;
        r += smaller * factorial(n - 1 - i);
        used |= 1 << x;
    }
    r
}

pub fn unrank(mut r: u64, n: usize) -> Perm {
    let mut avail: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let q = (r / f) as usize;
        r %= f;
        out.push(avail.remove(q));
    }
    out
}

/// Parses `"0,1,2,4,3"`.
pub fn parse(s: &str) -> Option<Perm> {
    let p: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    is_permutation(&p).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_and_parity() {
        let all4 = all(4);
        assert_eq!(all4.len(), 24);
        assert_eq!(all4.iter().filter(|p| parity(p) == 1).count(), 12);
        assert_eq!(parity(&[1, 0, 2]), -1);
        assert_eq!(parity(&[1, 2, 0]), 1);
    }

    #[test]
    fn rank_matches_lex_order() {
        for (r, p) in all(5).iter().enumerate() {
            assert_eq!(rank(p), r as u64);
            assert_eq!(&unrank(r as u64, 5), p);
        }
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(r in 0u64..5040) {
            let p = unrank(r, 7);
            prop_assert!(is_identity(&compose(&p, &inverse(&p))));
            prop_assert!(is_identity(&compose(&inverse(&p), &p)));
        }

        #[test]
        fn parity_is_multiplicative(a in 0u64..720, b in 0u64..720) {
            let (p, q) = (unrank(a, 6), unrank(b, 6));
            prop_assert_eq!(parity(&compose(&p, &q)), parity(&p) * parity(&q));
        }
    }
}
