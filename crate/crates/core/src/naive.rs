//! Direct scans over the original text, used to check query answers.

/// 1-based intervals of every exact occurrence of `pattern` in `text`.
pub fn find_exact(text: &[u8], pattern: &[u8]) -> Vec<(usize, usize)> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    text.windows(m)
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| (i + 1, i + m))
        .collect()
}

/// Unit-cost Levenshtein distance.
pub fn edit_distance(a: &[u8], b: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = (diag + usize::from(ca != cb)).min(up + 1).min(row[j] + 1);
            diag = up;
        }
    }
    row[b.len()]
}

/// 1-based intervals of every non-empty substring of `text` within edit
/// distance `k` of `pattern`, sorted.
///
/// A Sellers scan marks the end positions; each marked end is then checked
/// against every start that can be within `k` edits by a full distance
/// computation.
pub fn find_approx(text: &[u8], pattern: &[u8], k: usize) -> Vec<(usize, usize)> {
    let m = pattern.len();
    if k == 0 {
        return find_exact(text, pattern);
    }
    let mut col: Vec<usize> = (0..=m).collect();
    let mut out = Vec::new();
    for (end, &c) in text.iter().enumerate() {
        let mut diag = 0;
        for r in 1..=m {
            let prev = col[r];
            col[r] = (diag + usize::from(pattern[r - 1] != c))
                .min(prev + 1)
                .min(col[r - 1] + 1);
            diag = prev;
        }
        if col[m] > k {
            continue;
        }
        let shortest = m.saturating_sub(k).max(1);
        let longest = (m + k).min(end + 1);
        for len in (shortest..=longest).rev() {
            let start = end + 1 - len;
            if edit_distance(&text[start..=end], pattern) <= k {
                out.push((start + 1, end + 1));
            }
        }
    }
    out.sort_unstable();
    out
}
