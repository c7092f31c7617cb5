//! Ehrenfeucht–Fraïssé games on a single structure.
//!
//! Two tuples are rank-`r` equivalent iff Duplicator survives `r` rounds of
//! the game started from the position `(t1, t2)`. Positions are partial maps
//! `a_i ↦ b_i`; the constant interpretations are prepended to both sides so
//! constant coincidences are part of the atomic diagram.

use super::structure::FinStructure;
use super::FoError;

impl FinStructure {
    /// Decides whether `t1` and `t2` satisfy the same formulas of quantifier
    /// rank at most `rank`, by exhaustive search of the game tree.
    pub fn ef_equivalent<S: AsRef<str>>(&self, t1: &[S], t2: &[S], rank: usize) -> Result<bool, FoError> {
        if t1.len() != t2.len() {
            return Err(FoError::TupleLengthMismatch(t1.len(), t2.len()));
        }
        let a = self.indices(t1)?;
        let b = self.indices(t2)?;
        Ok(self.ef_indices(&a, &b, rank))
    }

    pub(crate) fn ef_indices(&self, t1: &[usize], t2: &[usize], rank: usize) -> bool {
        let consts: Vec<usize> = self.constants.values().copied().collect();
        let mut a = consts.clone();
        let mut b = consts;
        for (&x, &y) in t1.iter().zip(t2) {
            a.push(x);
            b.push(y);
            if !self.extends_partial_iso(&a, &b) {
                return false;
            }
        }
        self.duplicator_wins(&mut a, &mut b, rank)
    }

    /// Assuming `a[..len-1] ↦ b[..len-1]` is a partial isomorphism, checks
    /// that adding the last pair keeps it one.
    fn extends_partial_iso(&self, a: &[usize], b: &[usize]) -> bool {
        let m = a.len();
        let last = m - 1;
        if (0..last).any(|i| (a[i] == a[last]) != (b[i] == b[last])) {
            return false;
        }
        const STACK: usize = 8;
        let mut heap = Vec::new();
        for table in self.relations.values() {
            let k = table.arity;
            let mut stack = [0usize; 3 * STACK];
            let buf: &mut [usize] = if k <= STACK {
                &mut stack[..3 * k]
            } else {
                heap.clear();
                heap.resize(3 * k, 0);
                &mut heap
            };
            let (pos, rest) = buf.split_at_mut(k);
            let (ta, tb) = rest.split_at_mut(k);
            loop {
                if pos.contains(&last) {
                    for i in 0..k {
                        ta[i] = a[pos[i]];
                        tb[i] = b[pos[i]];
                    }
                    if self.rel_contains(table, ta) != self.rel_contains(table, tb) {
                        return false;
                    }
                }
                // odometer over positions 0..m
                let mut i = 0;
                while i < k {
                    pos[i] += 1;
                    if pos[i] < m {
                        break;
                    }
                    pos[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        true
    }

    fn duplicator_wins(&self, a: &mut Vec<usize>, b: &mut Vec<usize>, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        let n = self.size();
        for spoiler_left in [true, false] {
            for x in 0..n {
                // Replaying a chosen element has a forced answer and leads
                // back to the same position with fewer rounds left.
                let played = if spoiler_left { &a[..] } else { &b[..] };
                if played.contains(&x) {
                    continue;
                }
                let answered = (0..n).any(|y| {
                    let (l, r) = if spoiler_left { (x, y) } else { (y, x) };
                    a.push(l);
                    b.push(r);
                    let ok = self.extends_partial_iso(a, b) && self.duplicator_wins(a, b, rounds - 1);
                    a.pop();
                    b.pop();
                    ok
                });
                if !answered {
                    return false;
                }
            }
        }
        true
    }
}
