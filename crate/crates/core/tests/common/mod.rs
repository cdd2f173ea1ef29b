#![allow(dead_code)]

pub mod checks;

use hybrid_index::naive::edit_distance;

/// The six verses of the bottles song used as the worked example.
pub fn bottles() -> Vec<u8> {
    [
        "99-bottles-of-beer-on-the-wall-99-bottles-of-beer-",
        "take-one-down-and-pass-it-around-98-bottles-of-beer-on-the-wall-",
        "98-bottles-of-beer-on-the-wall-98-bottles-of-beer-",
        "take-one-down-and-pass-it-around-97-bottles-of-beer-on-the-wall-",
        "97-bottles-of-beer-on-the-wall-97-bottles-of-beer-",
        "take-one-down-and-pass-it-around-96-bottles-of-beer-on-the-wall-",
    ]
    .concat()
    .into_bytes()
}

/// Every 1-based occurrence interval of `pattern`, by sliding comparison.
pub fn scan_exact(text: &[u8], pattern: &[u8]) -> Vec<(usize, usize)> {
    let m = pattern.len();
    (0..text.len().saturating_sub(m - 1))
        .filter(|&i| &text[i..i + m] == pattern)
        .map(|i| (i + 1, i + m))
        .collect()
}

/// Every non-empty interval within `k` edits, by checking all intervals of
/// plausible length directly.
pub fn scan_approx_all_intervals(text: &[u8], pattern: &[u8], k: usize) -> Vec<(usize, usize)> {
    let m = pattern.len();
    let mut out = Vec::new();
    for i in 0..text.len() {
        for len in m.saturating_sub(k).max(1)..=m + k {
            if i + len > text.len() {
                break;
            }
            if edit_distance(&text[i..i + len], pattern) <= k {
                out.push((i + 1, i + len));
            }
        }
    }
    out
}

/// Naive LZ77 factorization: extend each phrase while the extension occurs
/// starting strictly left of the phrase; keep the leftmost such start.
pub fn naive_parse(text: &[u8]) -> Vec<(usize, usize)> {
    // (src, len) with src == 0 for literals
    let n = text.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut best = (0usize, 0usize);
        let mut len = 1;
        while i + len <= n {
            let needle = &text[i..i + len];
            match (0..i).find(|&s| s + len <= n && &text[s..s + len] == needle) {
                Some(s) => best = (s + 1, len),
                None => break,
            }
            len += 1;
        }
        if best.1 == 0 {
            out.push((0, 1));
            i += 1;
        } else {
            out.push(best);
            i += best.1;
        }
    }
    out
}

pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn text(&mut self, len: usize, alphabet: &[u8]) -> Vec<u8> {
        (0..len).map(|_| alphabet[self.below(alphabet.len())]).collect()
    }
}

/// The printed parse of the bottles text, phrase by phrase. The final
/// phrase runs past the six verses and is truncated in our text.
pub const PRINTED_PHRASES: &[&str] = &[
    "9", "9", "-", "b", "o", "t", "t", "l", "e", "s", "-", "o", "f", "-b", "e", "e", "r", "-o",
    "n", "-", "t", "h", "e", "-", "w", "a", "l", "l", "-", "99-bottles-of-beer-", "t", "a", "k",
    "e-", "on", "e-", "d", "o", "w", "n-", "a", "n", "d", "-", "p", "a", "s", "s-", "i", "t",
    "-a", "r", "o", "u", "nd-", "9", "8", "-bottles-of-beer-on-the-wall-9",
    "8-bottles-of-beer-on-the-wall-98-bottles-of-beer-",
    "take-one-down-and-pass-it-around-9", "7", "-bottles-of-beer-on-the-wall-9",
    "7-bottles-of-beer-on-the-wall-97-bottles-of-beer-",
    "take-one-down-and-pass-it-around-9", "6", "-bottles-of-beer-on-the-wall-9",
];

/// The printed encoding: a bare byte is a literal, `(src,len)` a copy.
pub const PRINTED_ENCODING: &str = "9 (1,1) - b o t (6,1) l e s (3,1) (5,1) f (3,2) (9,1) (9,1) r \
    (11,2) n (3,1) (6,1) h (9,1) (3,1) w a (8,1) (8,1) (3,1) (1,19) (6,1) (28,1) k (25,2) (20,2) \
    (25,2) d (5,1) (27,1) (21,2) (28,1) (21,1) (60,1) (3,1) p (28,1) (10,1) (10,2) i (6,1) (64,2) \
    (18,1) (5,1) u (66,3) (1,1) 8 (3,30) (85,49) (51,34) 7 (3,30) (199,49) (51,34) 6 (3,30)";

pub const PRINTED_L: &[usize] = &[
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 18, 19, 21, 22, 23, 24, 25, 26, 27, 28,
    29, 30, 31, 32, 51, 52, 53, 54, 56, 58, 60, 61, 62, 63, 65, 66, 67, 68, 69, 70, 71, 72, 74,
    75, 76, 78, 79, 80, 81, 84, 85, 86, 116, 165, 199, 200, 230, 279, 313, 314,
];

/// The printed filtered text for M = 4, K = 1, split at phrase boundaries.
pub const PRINTED_KERNEL_PHRASES: &[&str] = &[
    "9", "9", "-", "b", "o", "t", "t", "l", "e", "s", "-", "o", "f", "-b", "e", "e", "r", "-o",
    "n", "-", "t", "h", "e", "-", "w", "a", "l", "l", "-", "99-b##eer-", "t", "a", "k", "e-",
    "on", "e-", "d", "o", "w", "n-", "a", "n", "d", "-", "p", "a", "s", "s-", "i", "t", "-a",
    "r", "o", "u", "nd-", "9", "8", "-bot##ll-9", "8-bo##eer-", "take##nd-9", "7",
    "-bot##ll-9", "7-bo##eer-", "take##nd-9", "6", "-bot##ll-9",
];

/// The printed `L_{4,1}` up to the point where the two printed renderings
/// of the filtered text start to disagree, with marked entries.
pub const PRINTED_LMK_PREFIX: &[usize] = &[
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 18, 19, 21, 22, 23, 24, 25, 26, 27, 28,
    29, 30, 31, 32, 42, 43, 44, 45, 47, 49, 51, 52, 53, 54, 56, 57, 58, 59, 60, 61, 62, 63, 65, 66,
    67, 69, 70, 71, 72, 75, 76, 77, 87,
];
pub const PRINTED_LMK_MARKS: &[usize] = &[
    1, 3, 4, 5, 6, 8, 9, 10, 13, 18, 21, 24, 27, 28, 44, 51, 60, 65, 71, 76,
];

pub const PRINTED_GRID: &[(usize, usize)] = &[
    (1, 1), (6, 6), (3, 3), (5, 5), (3, 4), (9, 9), (9, 9), (11, 12), (3, 3), (6, 6), (9, 9),
    (3, 3), (8, 8), (8, 8), (3, 3), (1, 19), (6, 6), (28, 28), (25, 26), (20, 21), (25, 26),
    (5, 5), (27, 27), (21, 22), (28, 28), (21, 21), (60, 60), (3, 3), (28, 28), (10, 10),
    (10, 11), (6, 6), (64, 65), (18, 18), (5, 5), (66, 68), (1, 1), (3, 32), (85, 133),
    (51, 84), (3, 32), (199, 247), (51, 84), (3, 32),
];
pub const PRINTED_SATELLITES: &[usize] = &[
    2, 7, 11, 12, 14, 16, 17, 19, 22, 23, 25, 26, 29, 30, 31, 32, 51, 52, 54, 56, 58, 61, 62, 63,
    65, 66, 67, 68, 70, 71, 72, 75, 76, 78, 79, 81, 84, 86, 116, 165, 200, 230, 279, 314,
];

/// `(src, len)` per phrase, `src == 0` for literals.
pub fn printed_encoding() -> Vec<(usize, usize)> {
    PRINTED_ENCODING
        .split_whitespace()
        .map(|tok| match tok.strip_prefix('(') {
            Some(rest) => {
                let (a, b) = rest.trim_end_matches(')').split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            }
            None => (0, 1),
        })
        .collect()
}

/// Phrase starts in a concatenation of the given pieces (1-based).
pub fn piece_starts(pieces: &[&str]) -> Vec<usize> {
    let mut pos = 1;
    pieces
        .iter()
        .map(|p| {
            let s = pos;
            pos += p.len();
            s
        })
        .collect()
}
