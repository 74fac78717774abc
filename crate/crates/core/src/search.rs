//! Galloping search for the first index satisfying a monotone predicate.

/// Returns the smallest `n >= start` with `pred(n)`, assuming `pred` is
/// monotone (once true, true for every larger index). Returns `None` when
/// no such `n <= cap` exists.
pub(crate) fn first_true(start: u64, cap: u64, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    if start > cap {
        return None;
    }
    if pred(start) {
        return Some(start);
    }
    // pred(lo) is false, pred(hi) is true.
    let mut lo = start;
    let mut step = 1u64;
    let mut hi = loop {
        let probe = start.saturating_add(step).min(cap);
        if pred(probe) {
            break probe;
        }
        if probe == cap {
            return None;
        }
        lo = probe;
        step = step.saturating_mul(2);
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_threshold() {
        for t in 0..200u64 {
            assert_eq!(first_true(0, 1000, |n| n >= t), Some(t));
        }
        assert_eq!(first_true(5, 1000, |n| n >= 3), Some(5));
    }

    #[test]
    fn respects_cap() {
        assert_eq!(first_true(0, 100, |n| n >= 101), None);
        assert_eq!(first_true(0, 100, |n| n >= 100), Some(100));
        assert_eq!(first_true(10, 5, |_| true), None);
    }
}
