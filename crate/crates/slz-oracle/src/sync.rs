//! Definitional checks for τ-synchronizing sets.

use std::collections::HashMap;

use super::period;

/// Every pair of positions in [1..n−2τ+1] with equal 2τ-windows agrees on
/// membership.
pub fn consistent(t: &[u32], tau: usize, set: &[usize]) -> bool {
    let n = t.len();
    if 2 * tau > n {
        return set.is_empty();
    }
    let mut member = vec![false; n + 2];
    for &s in set {
        member[s] = true;
    }
    let mut seen: HashMap<&[u32], bool> = HashMap::new();
    for j in 1..=n + 1 - 2 * tau {
        let w = &t[j - 1..j - 1 + 2 * tau];
        if *seen.entry(w).or_insert(member[j]) != member[j] {
            return false;
        }
    }
    true
}

/// S ∩ [j..j+τ) is empty exactly when per(T[j..j+3τ−1)) ≤ τ/3.
pub fn dense(t: &[u32], tau: usize, set: &[usize]) -> bool {
    let n = t.len();
    let w = 3 * tau - 1;
    if w > n {
        return true;
    }
    let mut member = vec![false; n + 2];
    for &s in set {
        member[s] = true;
    }
    (1..=n + 1 - w).all(|j| {
        let hit = (j..j + tau).any(|k| member[k]);
        let periodic = 3 * period(&t[j - 1..j - 1 + w]) <= tau;
        hit != periodic
    })
}

/// All positions lie in [1..n−2τ+1].
pub fn in_range(t: &[u32], tau: usize, set: &[usize]) -> bool {
    set.iter().all(|&s| s >= 1 && s + 2 * tau <= t.len() + 1)
}
