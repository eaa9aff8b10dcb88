//! Suffix automaton over the scan window.
//!
//! One state per right-extension class of substrings; every word of a class
//! has the same occurrence end-set, hence the same set of one-letter right
//! extensions inside the window. That makes per-length complexity counts and
//! branching statistics a single pass over the states.

const UNSET: u32 = u32::MAX;

pub(crate) struct SuffixAutomaton {
    sigma: usize,
    len: Vec<u32>,
    link: Vec<i32>,
    next: Vec<u32>, // states * sigma, flattened
    last: usize,
}

impl SuffixAutomaton {
    pub fn new(sigma: usize) -> Self {
        let mut sam = SuffixAutomaton {
            sigma,
            len: Vec::new(),
            link: Vec::new(),
            next: Vec::new(),
            last: 0,
        };
        sam.add_state(0, -1);
        sam
    }

    pub fn from_text(text: &[u8], sigma: usize) -> Self {
        let mut sam = SuffixAutomaton::new(sigma);
        sam.len.reserve(2 * text.len());
        sam.link.reserve(2 * text.len());
        sam.next.reserve(2 * text.len() * sigma);
        for &c in text {
            sam.extend(c);
        }
        sam
    }

    fn add_state(&mut self, len: u32, link: i32) -> usize {
        self.len.push(len);
        self.link.push(link);
        self.next.extend(std::iter::repeat_n(UNSET, self.sigma));
        self.len.len() - 1
    }

    fn get(&self, state: usize, c: u8) -> u32 {
        self.next[state * self.sigma + c as usize]
    }

    fn set(&mut self, state: usize, c: u8, to: u32) {
        self.next[state * self.sigma + c as usize] = to;
    }

    fn extend(&mut self, c: u8) {
        let cur = self.add_state(self.len[self.last] + 1, -1);
        let mut p = self.last as i32;
        while p >= 0 && self.get(p as usize, c) == UNSET {
            self.set(p as usize, c, cur as u32);
            p = self.link[p as usize];
        }
        if p < 0 {
            self.link[cur] = 0;
        } else {
            let q = self.get(p as usize, c) as usize;
            if self.len[p as usize] + 1 == self.len[q] {
                self.link[cur] = q as i32;
            } else {
                let clone = self.add_state(self.len[p as usize] + 1, self.link[q]);
                let row = q * self.sigma;
                for i in 0..self.sigma {
                    self.next[clone * self.sigma + i] = self.next[row + i];
                }
                while p >= 0 && self.get(p as usize, c) == q as u32 {
                    self.set(p as usize, c, clone as u32);
                    p = self.link[p as usize];
                }
                self.link[q] = clone as i32;
                self.link[cur] = clone as i32;
            }
        }
        self.last = cur;
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    pub fn step(&self, state: usize, c: u8) -> Option<usize> {
        match self.get(state, c) {
            UNSET => None,
            s => Some(s as usize),
        }
    }

    pub fn walk(&self, word: &[u8]) -> Option<usize> {
        let mut s = 0usize;
        for &c in word {
            s = self.step(s, c)?;
        }
        Some(s)
    }

    pub fn out_degree(&self, state: usize) -> usize {
        let row = state * self.sigma;
        (0..self.sigma).filter(|&i| self.next[row + i] != UNSET).count()
    }

    pub fn transitions(&self, state: usize) -> impl Iterator<Item = (u8, usize)> + '_ {
        let row = state * self.sigma;
        (0..self.sigma).filter_map(move |i| match self.next[row + i] {
            UNSET => None,
            s => Some((i as u8, s as usize)),
        })
    }

    /// Histogram `hist[n][d]` = number of distinct substrings of length `n`
    /// with exactly `d` one-letter right extensions in the window, for
    /// `n <= max_len`. The root contributes the empty word at `n = 0`.
    pub fn degree_histogram(&self, max_len: usize) -> Vec<Vec<u64>> {
        let mut diff = vec![vec![0i64; self.sigma + 1]; max_len + 2];
        for state in 0..self.state_count() {
            let lo = if self.link[state] < 0 {
                0
            } else {
                self.len[self.link[state] as usize] as usize + 1
            };
            let hi = (self.len[state] as usize).min(max_len);
            if lo > hi {
                continue;
            }
            let d = self.out_degree(state);
            diff[lo][d] += 1;
            diff[hi + 1][d] -= 1;
        }
        let mut hist = vec![vec![0u64; self.sigma + 1]; max_len + 1];
        let mut acc = vec![0i64; self.sigma + 1];
        for n in 0..=max_len {
            for d in 0..=self.sigma {
                acc[d] += diff[n][d];
                hist[n][d] = acc[d] as u64;
            }
        }
        hist
    }
}
