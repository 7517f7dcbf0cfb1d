/// Wynn's epsilon algorithm on a sequence of partial sums.
///
/// Returns the highest even-column entry of the epsilon table built from
/// `sums`, together with its distance to the entry two columns lower as a
/// rough error indicator. Building stops early when a column difference
/// vanishes or overflows.
pub fn wynn_epsilon(sums: &[f64]) -> Option<(f64, f64)> {
    let m = sums.len();
    let last = *sums.last()?;
    if m < 3 {
        let spread = if m == 2 { (sums[1] - sums[0]).abs() } else { f64::INFINITY };
        return Some((last, spread));
    }
    let mut previous = vec![0.0; m + 1];
    let mut current = sums.to_vec();
    let mut best = last;
    let mut spread = (sums[m - 1] - sums[m - 2]).abs();
    'columns: for k in 1..m {
        let len = m - k;
        let mut next = Vec::with_capacity(len);
        for j in 0..len {
            let d = current[j + 1] - current[j];
            if d == 0.0 {
                break 'columns;
            }
            next.push(previous[j + 1] + 1.0 / d);
        }
        if k % 2 == 0 {
            let candidate = next[len - 1];
            if !candidate.is_finite() {
                break;
            }
            spread = (candidate - best).abs();
            best = candidate;
        }
        previous = current;
        current = next;
    }
    Some((best, spread))
}
