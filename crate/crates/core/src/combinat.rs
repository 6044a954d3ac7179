use alloc::vec::Vec;

/// All permutations of `1..=k` as one-line images, in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// All `k`-element subsets of `1..=n`, each sorted ascending, in
/// lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < (n - k + i + 1) as u32) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Sign of a permutation given in one-line notation.
pub fn sign(perm: &[u32]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), alloc::vec![alloc::vec![]]);
        assert_eq!(subsets(3, 3), alloc::vec![alloc::vec![1, 2, 3]]);
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&[1, 2, 3]), 1);
        assert_eq!(sign(&[2, 1, 3]), -1);
        assert_eq!(sign(&[2, 3, 1]), 1);
    }
}
