use crate::error::{Error, Result};

/// Sparse-table range argmax. Ties resolve to the smallest index.
///
/// A range minimum over `T` is the same structure over `Reverse<T>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeMaxIndex<T = u64> {
    values: Vec<T>,
    // table[j][i] = argmax over values[i .. i + 2^j]
    table: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> RangeMaxIndex<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = values.len();
        let mut table = vec![(0..n as u32).collect::<Vec<_>>()];
        let mut width = 1;
        while 2 * width <= n {
            let prev = table.last().unwrap();
            let row = (0..=n - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if values[b as usize] > values[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(row);
            width *= 2;
        }
        Ok(Self { values, table })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Index of the maximum in `values[a..=b]`.
    pub fn query(&self, a: usize, b: usize) -> Result<usize> {
        self.query_probed(a, b).map(|(idx, _)| idx)
    }

    /// Like [`query`](Self::query), also returning how many table cells were read.
    pub fn query_probed(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        if a > b || b >= self.values.len() {
            return Err(Error::InvalidRange {
                a,
                b,
                len: self.values.len(),
            });
        }
        let level = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let row = &self.table[level];
        let left = row[a] as usize;
        let right = row[b + 1 - (1 << level)] as usize;
        let best = if self.values[right] > self.values[left] {
            right
        } else {
            left
        };
        Ok((best, 2))
    }
}
