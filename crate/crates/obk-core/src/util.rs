//! Small shared helpers: deterministic RNG, content hashing, and the
//! parallel/sequential map used by the data-parallel inner loops.

/// Fixed default seed for every search the library runs. Recorded in
/// certificate provenance so runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x6f62_6b31;

/// SplitMix64, seeding every search the library runs.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// FNV-1a over bytes, used to fingerprint data files in certificates.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Order-preserving map over a slice. Runs on the rayon pool when the
/// `parallel` feature is enabled, sequentially otherwise.
#[cfg(feature = "parallel")]
pub fn map_in_order<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Order-preserving map over a slice. Runs on the rayon pool when the
/// `parallel` feature is enabled, sequentially otherwise.
#[cfg(not(feature = "parallel"))]
pub fn map_in_order<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
