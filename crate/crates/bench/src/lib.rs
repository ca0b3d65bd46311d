//! Fixtures shared by the benchmarks.

use garside_wb::Graph;

/// The w×h grid graph, vertices numbered row by row.
pub fn grid(w: usize, h: usize) -> Graph {
    let mut es = Vec::new();
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                es.push((v, v + 1));
            }
            if r + 1 < h {
                es.push((v, v + w));
            }
        }
    }
    Graph::new(w * h, &es)
}

/// A deterministic braid word on n strands: letters cycle through the
/// generators with alternating signs every third letter.
pub fn word(n: usize, len: usize) -> Vec<i64> {
    (0..len)
        .map(|i| {
            let g = (i * 7 % (n - 1)) as i64 + 1;
            if i % 3 == 2 { -g } else { g }
        })
        .collect()
}
