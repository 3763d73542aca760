//! RSK and Sagan–Worley insertion, the map Φ, and its preimage.
//!
//! RSK row-inserts each entry, bumping the smallest larger entry upward until
//! a new cell is created. Sagan–Worley does the same, except that an entry
//! bumped from the main diagonal (the leftmost cell of its row) switches to
//! column insertion, moving rightward column by column; the recording entry is
//! marked whenever column insertion occurred during that step.
//!
//! Both engines can emit a step trace. Trace coordinates are 1-indexed
//! `(row, column)` pairs; shifted tableaux use absolute columns, so row `r`
//! starts at column `r`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::perm::Permutation;
use crate::tableau::{
    build_s_sprime, enumerate_syt, MarkedShiftedTableau, ShiftedTableau, YoungTableau,
};

/// The insertion and recording tableaux produced by RSK.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RskResult {
    pub insertion: YoungTableau,
    pub recording: YoungTableau,
}

/// The insertion and (marked) recording tableaux produced by Sagan–Worley.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwResult {
    pub insertion: ShiftedTableau,
    pub recording: MarkedShiftedTableau,
}

/// One bump or placement event. The event kind records what the evicted entry
/// does next: a `RowBump` is followed by row insertion of the evicted entry,
/// a `ColBump` by column insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Place {
        value: u8,
        row: usize,
        col: usize,
    },
    RowBump {
        evicted: u8,
        incoming: u8,
        row: usize,
        col: usize,
    },
    ColBump {
        evicted: u8,
        incoming: u8,
        row: usize,
        col: usize,
    },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Place { value, row, col } => write!(f, "place {value} @({row},{col})"),
            TraceEvent::RowBump {
                evicted,
                incoming,
                row,
                col,
            } => {
                write!(f, "row-bump {evicted}←{incoming} @({row},{col})")
            }
            TraceEvent::ColBump {
                evicted,
                incoming,
                row,
                col,
            } => {
                write!(f, "col-bump {evicted}←{incoming} @({row},{col})")
            }
        }
    }
}

/// RSK insertion `π ↦ (P(π), Q(π))`.
pub fn rsk(p: &Permutation) -> RskResult {
    rsk_traced(p).0
}

/// RSK insertion together with its bump trace.
pub fn rsk_traced(p: &Permutation) -> (RskResult, Vec<TraceEvent>) {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut rec_rows: Vec<Vec<u8>> = Vec::new();
    let mut trace = Vec::new();
    for (i, &x) in p.as_slice().iter().enumerate() {
        let (r, c) = rsk_insert(&mut rows, x, &mut trace);
        if r == rec_rows.len() {
            rec_rows.push(Vec::new());
        }
        debug_assert_eq!(rec_rows[r].len(), c);
        rec_rows[r].push((i + 1) as u8);
    }
    let result = RskResult {
        insertion: YoungTableau::new(rows).expect("row insertion yields a standard tableau"),
        recording: YoungTableau::new(rec_rows).expect("recording growth yields a standard tableau"),
    };
    (result, trace)
}

/// Row-inserts `x`, returning the (0-indexed) position of the new cell.
fn rsk_insert(rows: &mut Vec<Vec<u8>>, x: u8, trace: &mut Vec<TraceEvent>) -> (usize, usize) {
    let mut cur = x;
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(Vec::new());
        }
        let row = &mut rows[r];
        let j = row.partition_point(|&y| y < cur);
        if j == row.len() {
            row.push(cur);
            trace.push(TraceEvent::Place {
                value: cur,
                row: r + 1,
                col: j + 1,
            });
            return (r, j);
        }
        let evicted = row[j];
        row[j] = cur;
        trace.push(TraceEvent::RowBump {
            evicted,
            incoming: cur,
            row: r + 1,
            col: j + 1,
        });
        cur = evicted;
        r += 1;
    }
}

/// Sagan–Worley insertion `π ↦ (R(π), S(π))`.
pub fn sagan_worley(p: &Permutation) -> SwResult {
    sagan_worley_traced(p).0
}

/// Sagan–Worley insertion together with its bump trace.
pub fn sagan_worley_traced(p: &Permutation) -> (SwResult, Vec<TraceEvent>) {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut rec_rows: Vec<Vec<u8>> = Vec::new();
    let mut marks = BTreeSet::new();
    let mut trace = Vec::new();
    for (i, &x) in p.as_slice().iter().enumerate() {
        let ((r, c), marked) = sw_insert(&mut rows, x, &mut trace);
        if r == rec_rows.len() {
            rec_rows.push(Vec::new());
        }
        debug_assert_eq!(rec_rows[r].len(), c);
        let label = (i + 1) as u8;
        rec_rows[r].push(label);
        if marked {
            marks.insert(label);
        }
    }
    let insertion = ShiftedTableau::new(rows).expect("insertion yields a standard shifted tableau");
    let recording = MarkedShiftedTableau::new(
        ShiftedTableau::new(rec_rows).expect("recording growth yields a standard shifted tableau"),
        marks,
    )
    .expect("marks stay off the main diagonal");
    (
        SwResult {
            insertion,
            recording,
        },
        trace,
    )
}

/// Inserts `x`, returning the new cell `(row, position)` and whether column
/// insertion occurred.
fn sw_insert(
    rows: &mut Vec<Vec<u8>>,
    x: u8,
    trace: &mut Vec<TraceEvent>,
) -> ((usize, usize), bool) {
    let mut cur = x;
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(Vec::new());
        }
        let row = &mut rows[r];
        let j = row.partition_point(|&y| y < cur);
        if j == row.len() {
            row.push(cur);
            trace.push(TraceEvent::Place {
                value: cur,
                row: r + 1,
                col: r + j + 1,
            });
            return ((r, j), false);
        }
        let evicted = row[j];
        row[j] = cur;
        if j == 0 {
            // Bumped from the main diagonal: switch to column insertion in the
            // column immediately to the right.
            trace.push(TraceEvent::ColBump {
                evicted,
                incoming: cur,
                row: r + 1,
                col: r + 1,
            });
            let cell = column_insert(rows, evicted, r + 1, trace);
            return (cell, true);
        }
        trace.push(TraceEvent::RowBump {
            evicted,
            incoming: cur,
            row: r + 1,
            col: r + j + 1,
        });
        cur = evicted;
        r += 1;
    }
}

/// Column-inserts `cur` into the (0-indexed) absolute column `col`, moving
/// right after each bump, and returns the new cell.
///
/// Every occupied column of a shifted diagram is a contiguous run of rows
/// starting at the bottom, so "the top of the column" is the cell just above
/// the run (the bottom row when the column is empty).
fn column_insert(
    rows: &mut Vec<Vec<u8>>,
    mut cur: u8,
    mut col: usize,
    trace: &mut Vec<TraceEvent>,
) -> (usize, usize) {
    'columns: loop {
        let mut height = 0;
        while height < rows.len() && height <= col && col < height + rows[height].len() {
            let j = col - height;
            if rows[height][j] > cur {
                let evicted = rows[height][j];
                rows[height][j] = cur;
                trace.push(TraceEvent::ColBump {
                    evicted,
                    incoming: cur,
                    row: height + 1,
                    col: col + 1,
                });
                cur = evicted;
                col += 1;
                continue 'columns;
            }
            height += 1;
        }
        // No larger entry in this column: place on top of it.
        if height == rows.len() {
            rows.push(Vec::new());
        }
        assert_eq!(
            rows[height].len(),
            col - height,
            "column placement must extend row {height}"
        );
        rows[height].push(cur);
        trace.push(TraceEvent::Place {
            value: cur,
            row: height + 1,
            col: col + 1,
        });
        return (height, col - height);
    }
}

/// `Φ(π) = R(rw(Q(π)))`: the Sagan–Worley insertion tableau of the reading
/// word of the RSK recording tableau.
pub fn phi(p: &Permutation) -> ShiftedTableau {
    let recording = rsk(p).recording;
    sagan_worley(&recording.reading_word()).insertion
}

/// All permutations in `Av_n(321)` with `Φ(π) = t`, for a two-row `t`.
///
/// Computed constructively: the recording tableau of such a permutation must
/// be `S` (or `S'` when it exists), so the preimage is obtained by running
/// inverse RSK over every insertion tableau of the matching shape. The result
/// is sorted lexicographically and has `C(n,k+1) - C(n,k-1)` elements.
pub fn phi_preimage(t: &ShiftedTableau) -> Result<Vec<Permutation>> {
    let (s, s_prime) = build_s_sprime(t)?;
    let mut out = Vec::new();
    for q in std::iter::once(s).chain(s_prime) {
        for p in enumerate_syt(&q.shape()) {
            out.push(rsk_inverse(&p, &q));
        }
    }
    out.sort();
    Ok(out)
}

/// Inverse RSK: recovers the unique permutation with insertion tableau `p` and
/// recording tableau `q` (shapes must agree).
pub fn rsk_inverse(p: &YoungTableau, q: &YoungTableau) -> Permutation {
    assert_eq!(
        p.shape(),
        q.shape(),
        "insertion and recording shapes must agree"
    );
    let n = p.size();
    let mut rows: Vec<Vec<u8>> = p.rows().to_vec();
    let mut cell_of = vec![(0usize, 0usize); n + 1];
    for (r, row) in q.rows().iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            cell_of[v as usize] = (r, c);
        }
    }
    let mut out = vec![0u8; n];
    for step in (1..=n).rev() {
        let (r, c) = cell_of[step];
        debug_assert_eq!(
            c + 1,
            rows[r].len(),
            "recording cells must be removed outside-in"
        );
        let mut cur = rows[r].pop().expect("cell present");
        for lower in (0..r).rev() {
            // The entry that bumped `cur` is the largest one below it.
            let j = rows[lower].partition_point(|&y| y < cur) - 1;
            std::mem::swap(&mut cur, &mut rows[lower][j]);
        }
        out[step - 1] = cur;
    }
    Permutation::new(out).expect("inverse insertion yields a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_av, PatternSet};
    use crate::tableau::enumerate_ssht;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rsk_worked_example() {
        let result = rsk(&p("4612537"));
        assert_eq!(result.insertion, "1,2,3,7/4,5/6".parse().unwrap());
        assert_eq!(result.recording, "1,2,5,7/3,4/6".parse().unwrap());
    }

    #[test]
    fn rsk_monotone_cases() {
        let inc = rsk(&Permutation::increasing(5));
        assert_eq!(inc.insertion, "1,2,3,4,5".parse().unwrap());
        assert_eq!(inc.recording, "1,2,3,4,5".parse().unwrap());
        let dec = rsk(&Permutation::decreasing(4));
        assert_eq!(dec.insertion, "1/2/3/4".parse().unwrap());
        assert_eq!(dec.recording, "1/2/3/4".parse().unwrap());
    }

    #[test]
    fn sagan_worley_worked_example() {
        let result = sagan_worley(&p("4612537"));
        assert_eq!(result.insertion, "1,2,3,7/4,5/6".parse().unwrap());
        assert_eq!(result.recording, "1,2,3',7/4,5/6".parse().unwrap());
    }

    #[test]
    fn sagan_worley_monotone_cases() {
        let inc = sagan_worley(&Permutation::increasing(6));
        assert_eq!(inc.insertion, "1,2,3,4,5,6".parse().unwrap());
        assert!(inc.recording.marks().is_empty());
        // The decreasing permutation column-bumps at every step after the
        // first, giving a single marked row.
        let dec = sagan_worley(&Permutation::decreasing(3));
        assert_eq!(dec.insertion, "1,2,3".parse().unwrap());
        assert_eq!(dec.recording.to_string(), "1,2',3'");
    }

    #[test]
    fn marks_stay_off_the_diagonal() {
        for q in enumerate_av(6, &PatternSet::none()) {
            let result = sagan_worley(&q);
            let diagonal: Vec<u8> = result
                .recording
                .base()
                .rows()
                .iter()
                .filter_map(|r| r.first().copied())
                .collect();
            for d in diagonal {
                assert!(!result.recording.is_marked(d), "{q}");
            }
        }
    }

    #[test]
    fn sw_trace_golden() {
        let (_, trace) = sagan_worley_traced(&p("4612537"));
        let lines: Vec<String> = trace.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            lines,
            [
                "place 4 @(1,1)",
                "place 6 @(1,2)",
                "col-bump 4←1 @(1,1)",
                "col-bump 6←4 @(1,2)",
                "place 6 @(1,3)",
                "row-bump 4←2 @(1,2)",
                "place 4 @(2,2)",
                "row-bump 6←5 @(1,3)",
                "place 6 @(2,3)",
                "row-bump 5←3 @(1,3)",
                "row-bump 6←5 @(2,3)",
                "place 6 @(3,3)",
                "place 7 @(1,4)",
            ]
        );
    }

    #[test]
    fn rsk_trace_golden() {
        let (_, trace) = rsk_traced(&p("312"));
        let lines: Vec<String> = trace.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            lines,
            [
                "place 3 @(1,1)",
                "row-bump 3←1 @(1,1)",
                "place 3 @(2,1)",
                "place 2 @(1,2)",
            ]
        );
    }

    #[test]
    fn rsk_inverse_round_trip() {
        for n in 0..=6 {
            for q in enumerate_av(n, &PatternSet::none()) {
                let result = rsk(&q);
                assert_eq!(rsk_inverse(&result.insertion, &result.recording), q);
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&Permutation::increasing(5)),
            "1,2,3,4,5".parse().unwrap()
        );
        let t = phi(&p("4612537"));
        assert_eq!(
            t.peak_set(),
            crate::perm::IndexSet::new(vec![2, 5], 7).unwrap()
        );
    }

    #[test]
    fn phi_preserves_peaks_everywhere() {
        for n in 0..=6 {
            for q in enumerate_av(n, &PatternSet::none()) {
                assert_eq!(phi(&q).peak_set(), q.peak_set(), "{q}");
            }
        }
    }

    #[test]
    fn reading_words_of_s_and_sprime_insert_back_to_t() {
        let t: ShiftedTableau = "1,2,3,6,7,9/4,5,8".parse().unwrap();
        let (s, s_prime) = build_s_sprime(&t).unwrap();
        assert_eq!(sagan_worley(&s.reading_word()).insertion, t);
        assert_eq!(sagan_worley(&s_prime.unwrap().reading_word()).insertion, t);
    }

    #[test]
    fn phi_preimage_example_count() {
        // Shape (6,3) at n = 9: |SYT(6,3)| + |SYT(5,4)| = 48 + 42.
        let t: ShiftedTableau = "1,2,3,6,7,9/4,5,8".parse().unwrap();
        let preimage = phi_preimage(&t).unwrap();
        assert_eq!(preimage.len(), 90);
        let av321 = PatternSet::parse("321").unwrap();
        for q in &preimage {
            assert!(q.avoids_all(&av321), "{q}");
            assert_eq!(phi(q), t, "{q}");
        }
    }

    #[test]
    fn phi_preimage_single_row() {
        let t: ShiftedTableau = "1,2,3,4,5".parse().unwrap();
        assert_eq!(phi_preimage(&t).unwrap().len(), 5);
    }

    #[test]
    fn phi_preimage_minimum_size() {
        // n = 2k+1: only SYT(k+1,k) contributes.
        let t: ShiftedTableau = "1,2,3/4,5".parse().unwrap();
        assert_eq!(phi_preimage(&t).unwrap().len(), 5);
    }

    #[test]
    fn phi_preimage_matches_brute_force() {
        let av321 = PatternSet::parse("321").unwrap();
        for n in 1..=7usize {
            let avoiders = enumerate_av(n, &av321);
            let mut k = 0;
            while n > 2 * k {
                let parts = if k == 0 {
                    vec![n as u8]
                } else {
                    vec![(n - k) as u8, k as u8]
                };
                let shape = crate::tableau::StrictPartition::new(parts).unwrap();
                for t in enumerate_ssht(&shape) {
                    let constructive = phi_preimage(&t).unwrap();
                    let brute: Vec<Permutation> =
                        avoiders.iter().filter(|q| phi(q) == t).cloned().collect();
                    assert_eq!(constructive, brute, "shape {shape} tableau {t}");
                }
                k += 1;
            }
        }
    }

    #[test]
    fn peakless_avoiders_have_low_insertion_tableaux() {
        let peakless = PatternSet::parse("132,231").unwrap();
        for n in 1..=8 {
            for q in enumerate_av(n, &peakless) {
                assert!(sagan_worley(&q).insertion.height() <= 2, "{q}");
            }
        }
    }
}
