use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::value::Record;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a over the key parts, each followed by a 0xff separator so that
/// ("ab", "c") and ("a", "bc") hash differently.
pub fn keyed_hash(seed: u64, parts: &[&[u8]]) -> u64 {
    let mut h = FNV_OFFSET;
    let mut feed = |bytes: &[u8]| {
        for &byte in bytes {
            h ^= u64::from(byte);
            h = h.wrapping_mul(FNV_PRIME);
        }
    };
    feed(&seed.to_le_bytes());
    for part in parts {
        feed(part);
        feed(&[0xff]);
    }
    h
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Generator for one data-tool response; arguments are hashed in canonical
/// (sorted-key) form so their order never matters.
pub fn response_rng(seed: u64, family: &str, tool: &str, args: &Record) -> ChaCha8Rng {
    let canonical = crate::value::Value::Record(args.clone()).to_canonical_json();
    let h = keyed_hash(seed, &[family.as_bytes(), tool.as_bytes(), canonical.as_bytes()]);
    ChaCha8Rng::seed_from_u64(splitmix64(h))
}
