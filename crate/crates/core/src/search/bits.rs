//! Fixed-width bit sets used inside the branch-and-bound.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits<const W: usize>(pub(crate) [u64; W]);

impl<const W: usize> Bits<W> {
    pub(crate) const CAPACITY: usize = 64 * W;

    pub(crate) fn empty() -> Self {
        Bits([0; W])
    }

    pub(crate) fn full(len: usize) -> Self {
        debug_assert!(len <= Self::CAPACITY);
        let mut b = Bits::empty();
        for (i, w) in b.0.iter_mut().enumerate() {
            let lo = i * 64;
            if len >= lo + 64 {
                *w = u64::MAX;
            } else if len > lo {
                *w = (1u64 << (len - lo)) - 1;
            }
        }
        b
    }

    pub(crate) fn from_words(words: &[u64]) -> Self {
        let mut b = Bits::empty();
        b.0[..words.len()].copy_from_slice(words);
        b
    }

    #[inline]
    pub(crate) fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }

    #[inline]
    pub(crate) fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }

    #[inline]
    pub(crate) fn contains(&self, v: usize) -> bool {
        self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub(crate) fn and(&self, other: &Self) -> Self {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a &= b;
        }
        r
    }

    #[inline]
    pub(crate) fn and_not(&self, other: &Self) -> Self {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a &= !b;
        }
        r
    }

    #[inline]
    pub(crate) fn intersection_count(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn iter(&self) -> BitIter<W> {
        BitIter {
            words: self.0,
            idx: 0,
        }
    }

    pub(crate) fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub(crate) struct BitIter<const W: usize> {
    words: [u64; W],
    idx: usize,
}

impl<const W: usize> Iterator for BitIter<W> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.idx < W {
            let w = self.words[self.idx];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.idx] = w & (w - 1);
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
        }
        None
    }
}
