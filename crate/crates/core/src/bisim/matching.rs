//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Whether a bijection `h: left → right` with `edge(x, h(x))` for every `x`
/// exists.
pub fn has_perfect_matching(left: &[u32], right: &[u32], edge: impl Fn(u32, u32) -> bool) -> bool {
    if left.len() != right.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&x| (0..right.len()).filter(|&j| edge(x, right[j])).collect())
        .collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    max_matching(&adj, right.len()) == left.len()
}

/// Size of a maximum matching; `adj[i]` lists the right vertices of left
/// vertex `i`.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let n = adj.len();
    let mut match_l = vec![FREE; n];
    let mut match_r = vec![FREE; right];
    let mut dist = vec![0usize; n];
    let mut size = 0;
    loop {
        // Layer the free left vertices and everything reachable from them
        // by alternating paths.
        let mut queue = VecDeque::new();
        for i in 0..n {
            if match_l[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                match match_r[j] {
                    FREE => found = true,
                    k if dist[k] == usize::MAX => {
                        dist[k] = dist[i] + 1;
                        queue.push_back(k);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return size;
        }
        for i in 0..n {
            if match_l[i] == FREE && augment(i, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let k = match_r[j];
        let ok = k == FREE || (dist[k] == dist[i] + 1 && augment(k, adj, match_l, match_r, dist));
        if ok {
            match_l[i] = j;
            match_r[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(has_perfect_matching(&[], &[], |_, _| false));
        assert!(has_perfect_matching(&[0, 1], &[5, 6], |x, y| (x, y) != (0, 5)));
        assert!(!has_perfect_matching(&[0, 1], &[5, 6], |_, y| y == 5));
        assert!(!has_perfect_matching(&[0], &[5, 6], |_, _| true));
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy 0→a blocks 1; the matching must reroute 0 to b.
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(max_matching(&adj, 2), 2);
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(max_matching(&adj, 3), 2);
    }
}
