/// Depth-first search over slot assignments.
///
/// Slot `k` takes a value from `candidates[k]`, tried in order. After each
/// assignment `accept` is called with the assigned prefix and may reject it;
/// `visit` receives every complete assignment and returns `false` to stop.
/// Returns `false` iff the search was stopped early.
pub(crate) fn backtrack<A, V>(candidates: &[Vec<usize>], mut accept: A, mut visit: V) -> bool
where
    A: FnMut(&[usize]) -> bool,
    V: FnMut(&[usize]) -> bool,
{
    let n = candidates.len();
    if n == 0 {
        return visit(&[]);
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return true;
    }
    let mut cursor = vec![0usize; n];
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut depth = 0usize;
    loop {
        if cursor[depth] == candidates[depth].len() {
            if depth == 0 {
                return true;
            }
            cursor[depth] = 0;
            depth -= 1;
            chosen.pop();
            cursor[depth] += 1;
            continue;
        }
        chosen.push(candidates[depth][cursor[depth]]);
        if !accept(&chosen) {
            chosen.pop();
            cursor[depth] += 1;
            continue;
        }
        if depth + 1 == n {
            if !visit(&chosen) {
                return false;
            }
            chosen.pop();
            cursor[depth] += 1;
        } else {
            depth += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::backtrack;

    #[test]
    fn enumerates_product_in_order() {
        let mut seen = Vec::new();
        backtrack(&[vec![0, 1], vec![5, 6]], |_| true, |a| {
            seen.push(a.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 5], vec![0, 6], vec![1, 5], vec![1, 6]]);
    }

    #[test]
    fn pruning_and_early_stop() {
        let mut seen = Vec::new();
        let finished = backtrack(
            &[vec![0, 1, 2], vec![0, 1, 2]],
            |a| a.len() < 2 || a[0] != a[1],
            |a| {
                seen.push(a.to_vec());
                seen.len() < 3
            },
        );
        assert!(!finished);
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn empty_slots() {
        let mut count = 0;
        backtrack(&[], |_| true, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
        backtrack(&[vec![1], vec![]], |_| true, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
