//! Small combinatorial helpers shared by the enumeration kernels.

/// Binomial coefficient C(n, k) in u64 (saturating on overflow is not
/// needed at desk scale; debug builds will catch it).
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient n! / (d_1! d_2! ... d_l!). The parts need not
/// sum to n; the remainder is treated as unused slots.
pub(crate) fn multinomial(n: u64, parts: &[u64]) -> u64 {
    let mut remaining = n;
    let mut acc: u64 = 1;
    for &d in parts {
        acc *= binomial(remaining, d);
        remaining -= d;
    }
    acc
}

pub(crate) fn factorial(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

/// All k-element subsets of `items`, in lexicographic order.
pub(crate) fn subsets_of_size<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance the combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All nonempty subsets of `items` that contain `items[0]`.
pub(crate) fn subsets_containing_first<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    let rest = &items[1..];
    let mut out = Vec::new();
    for mask in 0..(1u64 << rest.len()) {
        let mut s = vec![items[0]];
        for (i, &x) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.push(x);
            }
        }
        out.push(s);
    }
    out
}

/// Ordered assignments of pairwise disjoint blocks of the given sizes drawn
/// from `items`, in lexicographic order. Blocks jointly cover `items` only
/// when the sizes sum to `items.len()`.
pub(crate) fn ordered_block_assignments<T: Copy + Ord>(
    items: &[T],
    sizes: &[usize],
) -> Vec<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<T>> = Vec::new();
    let pool: Vec<T> = items.to_vec();
    recurse(&pool, sizes, &mut current, &mut out);
    return out;

    fn recurse<T: Copy + Ord>(
        pool: &[T],
        sizes: &[usize],
        current: &mut Vec<Vec<T>>,
        out: &mut Vec<Vec<Vec<T>>>,
    ) {
        match sizes.split_first() {
            None => out.push(current.clone()),
            Some((&size, rest)) => {
                for block in subsets_of_size(pool, size) {
                    let remaining: Vec<T> =
                        pool.iter().copied().filter(|x| !block.contains(x)).collect();
                    current.push(block);
                    recurse(&remaining, rest, current, out);
                    current.pop();
                }
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest power of p dividing n, returned as (exponent, p-free part).
pub(crate) fn p_adic_split(n: u64, p: u64) -> (u32, u64) {
    let mut exp = 0;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        exp += 1;
    }
    (exp, rest)
}

pub(crate) fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % (d * d) == 0 {
            return false;
        }
        while m % d == 0 {
            m /= d;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_multinomial() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(multinomial(7, &[1, 3, 3]), 140);
        assert_eq!(multinomial(3, &[1, 2]), 3);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
    }

    #[test]
    fn subsets_enumerate_lexicographically() {
        let s = subsets_of_size(&[0, 1, 2, 3], 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[5], vec![2, 3]);
    }

    #[test]
    fn block_assignments_match_multinomial() {
        let a = ordered_block_assignments(&[0, 1, 2, 3, 4], &[2, 3]);
        assert_eq!(a.len() as u64, multinomial(5, &[2, 3]));
        let b = ordered_block_assignments(&[0, 1, 2], &[1, 1]);
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn primality_and_valuation() {
        assert!(is_prime(2) && is_prime(105 / 15) && is_prime(13));
        assert!(!is_prime(1) && !is_prime(105));
        assert_eq!(p_adic_split(105, 3), (1, 35));
        assert_eq!(p_adic_split(48, 2), (4, 3));
        assert!(is_squarefree(105) && is_squarefree(30));
        assert!(!is_squarefree(54) && !is_squarefree(4));
    }
}
