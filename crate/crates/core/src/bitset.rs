/// Fixed-size bit rows, one per vertex, used for reachability sweeps.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    /// `row[dst] |= row[src]`.
    pub fn or_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            return;
        }
        let w = self.words_per_row;
        let (a, b) = if src < dst {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&lo[src * w..src * w + w], &mut hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&hi[..w], &mut lo[dst * w..dst * w + w])
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d |= *s;
        }
    }

    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let w = self.words_per_row;
        self.bits[row * w..row * w + w]
            .iter()
            .enumerate()
            .flat_map(|(i, &word)| {
                let mut word = word;
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(i * 64 + bit)
                })
            })
    }
}
