//! Index container and packed text files.
//!
//! Index: magic `SLZIX01`, u32 section count, then per section u32 id, u64
//! offset, u64 length, then the payloads. All integers little-endian. Stored
//! parts are the text, SA, core table, synchronizing positions, runs and the
//! B_min words; everything else is rebuilt on load.
//!
//! Packed text: `SLZ2`, u64 n, then four 2-bit symbols per byte, lowest bits
//! first.

use std::collections::BTreeMap;

use crate::bitpack::Bitvector;
use crate::error::{Error, Result};
use crate::minocc::core::{CoreTables, MinoccTable};
use crate::minocc::nonperiodic::NonperiodicIndex;
use crate::minocc::periodic::{PeriodicIndex, Run};
use crate::minocc::{Engine, FullIndex, MinOccIndex};
use crate::prefix_rmq::Layout;
use crate::rmq::RmqIndex;
use crate::sync_set::{r_mask, SyncSet};
use crate::text::{bits_for, PackedSeq, PackedText, SuffixScaffold};

pub const INDEX_MAGIC: &[u8; 7] = b"SLZIX01";
pub const PACKED2_MAGIC: &[u8; 4] = b"SLZ2";

const VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[repr(u32)]
enum Section {
    Params = 1,
    Text = 2,
    Sa = 3,
    Core = 4,
    Sync = 5,
    Runs = 6,
    BminMinus = 7,
    BminPlus = 8,
    Isa = 9,
}

impl Section {
    fn from_id(id: u32) -> Option<Section> {
        use Section::*;
        [Params, Text, Sa, Core, Sync, Runs, BminMinus, BminPlus, Isa].into_iter().find(|s| *s as u32 == id)
    }
}

#[derive(Default)]
struct Buf(Vec<u8>);

impl Buf {
    fn u32(&mut self, v: u32) -> &mut Self {
        self.0.extend_from_slice(&v.to_le_bytes());
        self
    }
    fn u64(&mut self, v: u64) -> &mut Self {
        self.0.extend_from_slice(&v.to_le_bytes());
        self
    }
    fn u32s(&mut self, v: &[u32]) -> &mut Self {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| {
            self.u32(x);
        });
        self
    }
    fn u64s(&mut self, v: &[u64]) -> &mut Self {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| {
            self.u64(x);
        });
        self
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    what: &'static str,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.bytes.len() < k {
            return Err(Error::Format(format!("{} section truncated", self.what)));
        }
        let (head, rest) = self.bytes.split_at(k);
        self.bytes = rest;
        Ok(head)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format(format!("{} value exceeds usize", self.what)))
    }
    fn count(&mut self, width: usize) -> Result<usize> {
        let k = self.usize()?;
        if k.checked_mul(width).is_none_or(|b| b > self.bytes.len()) {
            return Err(Error::Format(format!("{} array of {k} elements exceeds the payload", self.what)));
        }
        Ok(k)
    }
    fn u32s(&mut self) -> Result<Vec<u32>> {
        let k = self.count(4)?;
        (0..k).map(|_| self.u32()).collect()
    }
    fn u64s(&mut self) -> Result<Vec<u64>> {
        let k = self.count(8)?;
        (0..k).map(|_| self.u64()).collect()
    }
    fn done(&self) -> Result<()> {
        if self.bytes.is_empty() {
            Ok(())
        } else {
            Err(Error::Format(format!("{} section has {} trailing bytes", self.what, self.bytes.len())))
        }
    }
}

fn layout_code(l: Layout) -> (u64, u64) {
    match l {
        Layout::Auto => (0, 0),
        Layout::Simple => (1, 0),
        Layout::Shallow(v) => (2, v.map_or(0, |x| x as u64 + 1)),
        Layout::Combined(v) => (3, v.map_or(0, |x| x as u64 + 1)),
    }
}

fn layout_from(tag: u64, v: u64) -> Result<Layout> {
    let opt = (v > 0).then(|| v as usize - 1);
    Ok(match tag {
        0 => Layout::Auto,
        1 => Layout::Simple,
        2 => Layout::Shallow(opt),
        3 => Layout::Combined(opt),
        _ => return Err(Error::Format(format!("unknown prefix-RMQ layout {tag}"))),
    })
}

fn bitvector(b: &Bitvector) -> Vec<u8> {
    let mut buf = Buf::default();
    buf.u64(b.len() as u64).u64s(b.words());
    buf.0
}

fn read_bitvector(r: &mut Reader) -> Result<Bitvector> {
    let len = r.usize()?;
    let words = r.u64s()?;
    if words.len() != len.div_ceil(64) {
        return Err(Error::Format(format!("{} bitvector of {len} bits with {} words", r.what, words.len())));
    }
    Ok(Bitvector::from_words(words, len))
}

impl MinOccIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut sections: Vec<(Section, Vec<u8>)> = Vec::new();
        let text = self.text();
        let (ltag, lval) = layout_code(self.layout());
        let relaxed = self.scaffold().has_isa();
        let mut params = Buf::default();
        params.u64(VERSION).u64(self.tau() as u64).u64(matches!(self.engine(), Engine::Full(_)) as u64);
        params.u64(ltag).u64(lval).u64(relaxed as u64);
        sections.push((Section::Params, params.0));
        let mut t = Buf::default();
        t.u64(text.n() as u64).u32(text.sigma()).u32(text.has_sentinel() as u32);
        t.u64(text.n_total() as u64).u32(text.bits()).u64s(text.seq().words());
        sections.push((Section::Text, t.0));
        let mut sa = Buf::default();
        sa.u32s(self.scaffold().sa_array());
        sections.push((Section::Sa, sa.0));
        if relaxed {
            let mut isa = Buf::default();
            isa.u32s(self.scaffold().isa_array());
            sections.push((Section::Isa, isa.0));
        }
        if let Engine::Full(f) = self.engine() {
            let mut core = Buf::default();
            match f.core.table() {
                MinoccTable::Flat(v) => {
                    core.u32(0).u32s(v);
                }
                MinoccTable::Sparse(v) => {
                    core.u32(1).u64(v.len() as u64);
                    for &(k, j) in v {
                        core.u64(k as u64).u64((k >> 64) as u64).u32(j);
                    }
                }
            }
            sections.push((Section::Core, core.0));
            let mut sync = Buf::default();
            sync.u32s(f.nonperiodic.sync().positions()).u32(f.nonperiodic.sync().scrambled() as u32);
            sections.push((Section::Sync, sync.0));
            let mut runs = Buf::default();
            runs.u64(f.periodic.runs().len() as u64);
            for r in f.periodic.runs() {
                for v in [r.start, r.end, r.end_full, r.period, r.head, r.exp, r.root_pos, r.root_id, r.plus as u32] {
                    runs.u32(v);
                }
            }
            sections.push((Section::Runs, runs.0));
            let [m, p] = f.periodic.bmin();
            sections.push((Section::BminMinus, bitvector(m)));
            sections.push((Section::BminPlus, bitvector(p)));
        }
        let mut out = Vec::new();
        out.extend_from_slice(INDEX_MAGIC);
        out.extend_from_slice(&(sections.len() as u32).to_le_bytes());
        let mut offset = (INDEX_MAGIC.len() + 4 + sections.len() * 20) as u64;
        for (id, payload) in &sections {
            out.extend_from_slice(&(*id as u32).to_le_bytes());
            out.extend_from_slice(&offset.to_le_bytes());
            out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
            offset += payload.len() as u64;
        }
        for (_, payload) in sections {
            out.extend_from_slice(&payload);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let table = section_table(bytes)?;
        let get = |s: Section, what: &'static str| -> Result<Reader> {
            table.get(&s).map(|b| Reader { bytes: b, what }).ok_or_else(|| Error::Format(format!("missing {what} section")))
        };
        let mut p = get(Section::Params, "params")?;
        let version = p.u64()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported container version {version}")));
        }
        let tau = p.usize()?;
        let full = p.u64()? == 1;
        let layout = layout_from(p.u64()?, p.u64()?)?;
        let relaxed = p.u64()? == 1;
        p.done()?;

        let mut t = get(Section::Text, "text")?;
        let n = t.usize()?;
        let sigma = t.u32()?;
        let has_sentinel = t.u32()? == 1;
        let len = t.usize()?;
        let bits = t.u32()?;
        let words = t.u64s()?;
        t.done()?;
        if sigma < 2 || bits != bits_for(sigma as u64) || len != n + has_sentinel as usize || words.len() != (len * bits as usize).div_ceil(64) + 1 {
            return Err(Error::Format("inconsistent text header".into()));
        }
        let raw = PackedSeq::from_words(len, bits, words);
        let symbols = raw.to_vec();
        if symbols.iter().any(|&c| c >= sigma) || (has_sentinel && symbols[..n].iter().any(|&c| c == sigma - 1)) {
            return Err(Error::Format("text symbol outside the alphabet".into()));
        }
        if has_sentinel && symbols.last() != Some(&(sigma - 1)) {
            return Err(Error::Format("text does not end with the sentinel".into()));
        }
        // repacking clears any stray bits past the end
        let text = PackedText::from_parts(n, sigma, has_sentinel, PackedSeq::from_symbols(&symbols, bits));

        let mut s = get(Section::Sa, "suffix array")?;
        let sa = s.u32s()?;
        s.done()?;
        let mut seen = vec![false; len];
        if sa.len() != len || !sa.iter().all(|&x| x >= 1 && x as usize <= len && !std::mem::replace(&mut seen[x as usize - 1], true)) {
            return Err(Error::Format("suffix array is not a permutation of the text positions".into()));
        }
        let mut scaffold = SuffixScaffold::from_sa(sa);
        if let Ok(mut r) = get(Section::Isa, "inverse suffix array") {
            let isa = r.u32s()?;
            r.done()?;
            if isa != scaffold.isa_array() {
                return Err(Error::Format("stored ISA disagrees with the suffix array".into()));
            }
        }

        let engine = if full {
            Engine::Full(Box::new(load_full(&text, &scaffold, tau, layout, &get)?))
        } else {
            Engine::Fallback(RmqIndex::new(scaffold.sa_array().iter().map(|&x| x as u64).collect()))
        };
        if !relaxed {
            scaffold.strip_isa();
        }
        Ok(MinOccIndex::from_parts(text, scaffold, tau, layout, engine))
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_bytes())?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

fn section_table(bytes: &[u8]) -> Result<BTreeMap<Section, &[u8]>> {
    let rest = bytes
        .strip_prefix(INDEX_MAGIC.as_slice())
        .ok_or_else(|| Error::Format("missing SLZIX01 magic".into()))?;
    let mut r = Reader { bytes: rest, what: "section table" };
    let count = r.u32()? as usize;
    let mut table = BTreeMap::new();
    for _ in 0..count {
        let id = r.u32()?;
        let off = r.usize()?;
        let len = r.usize()?;
        let sec = Section::from_id(id).ok_or_else(|| Error::Format(format!("unknown section id {id}")))?;
        let body = off
            .checked_add(len)
            .and_then(|end| bytes.get(off..end))
            .ok_or_else(|| Error::Format(format!("section {id} outside the file")))?;
        if table.insert(sec, body).is_some() {
            return Err(Error::Format(format!("duplicate section {id}")));
        }
    }
    Ok(table)
}

fn load_full<'a>(
    text: &PackedText,
    scaffold: &SuffixScaffold,
    tau: usize,
    layout: Layout,
    get: &impl Fn(Section, &'static str) -> Result<Reader<'a>>,
) -> Result<FullIndex> {
    let n = text.n_total();
    if tau == 0 || 3 * tau - 1 > n {
        return Err(Error::Format(format!("τ = {tau} invalid for n = {n}")));
    }
    let mut c = get(Section::Core, "core")?;
    let table = match c.u32()? {
        0 => MinoccTable::Flat(c.u32s()?),
        1 => {
            let k = c.count(20)?;
            let mut v = Vec::with_capacity(k);
            for _ in 0..k {
                let lo = c.u64()? as u128;
                let hi = c.u64()? as u128;
                v.push((lo | hi << 64, c.u32()?));
            }
            if !v.windows(2).all(|w| w[0].0 < w[1].0) {
                return Err(Error::Format("sparse core table not sorted".into()));
            }
            MinoccTable::Sparse(v)
        }
        k => return Err(Error::Format(format!("unknown core table kind {k}"))),
    };
    c.done()?;
    let core = CoreTables::from_parts(text, tau, table)?;

    let mut s = get(Section::Sync, "sync")?;
    let positions = s.u32s()?;
    let scrambled = s.u32()? == 1;
    s.done()?;
    if !positions.windows(2).all(|w| w[0] < w[1]) || positions.iter().any(|&p| p == 0 || p as usize > n) {
        return Err(Error::Format("synchronizing positions not sorted inside the text".into()));
    }
    let sync = SyncSet::from_positions(n, tau, positions, scaffold, scrambled);

    let mut r = get(Section::Runs, "runs")?;
    let k = r.count(36)?;
    let mut runs = Vec::with_capacity(k);
    for _ in 0..k {
        let mut f = [0u32; 9];
        for x in &mut f {
            *x = r.u32()?;
        }
        let [start, end, end_full, period, head, exp, root_pos, root_id, plus] = f;
        let run = Run { start, end, end_full, period, head, exp, root_pos, root_id, plus: plus == 1 };
        let sane = period >= 1
            && start >= 1
            && (end as usize) <= n
            && start as usize + 3 * tau - 1 <= end as usize
            && end_full <= end
            && end_full as usize >= start as usize + run.pow_len(tau);
        if !sane {
            return Err(Error::Format(format!("run {run:?} inconsistent with τ = {tau}")));
        }
        runs.push(run);
    }
    r.done()?;
    let mut bm = get(Section::BminMinus, "B_min-")?;
    let minus = read_bitvector(&mut bm)?;
    bm.done()?;
    let mut bp = get(Section::BminPlus, "B_min+")?;
    let plus = read_bitvector(&mut bp)?;
    bp.done()?;
    if minus.len() != n || plus.len() != n {
        return Err(Error::Format("B_min length differs from the text".into()));
    }

    let rm = r_mask(text, tau);
    let nonperiodic = NonperiodicIndex::build(text, sync, &rm, layout)?;
    let periodic = PeriodicIndex::assemble(scaffold, tau, runs, [minus, plus]);
    Ok(FullIndex { core, r: rm, nonperiodic, periodic })
}

/// Packs symbols in [0..4) as an `SLZ2` file.
pub fn write_packed2(symbols: &[u32]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(12 + symbols.len().div_ceil(4));
    out.extend_from_slice(PACKED2_MAGIC);
    out.extend_from_slice(&(symbols.len() as u64).to_le_bytes());
    for chunk in symbols.chunks(4) {
        let mut byte = 0u8;
        for (k, &c) in chunk.iter().enumerate() {
            if c >= 4 {
                return Err(Error::Input(format!("symbol {c} does not fit 2 bits")));
            }
            byte |= (c as u8) << (2 * k);
        }
        out.push(byte);
    }
    Ok(out)
}

/// Reads an `SLZ2` file.
pub fn read_packed2(bytes: &[u8]) -> Result<Vec<u32>> {
    let rest = bytes.strip_prefix(PACKED2_MAGIC.as_slice()).ok_or_else(|| Error::Format("missing SLZ2 magic".into()))?;
    if rest.len() < 8 {
        return Err(Error::Format("truncated SLZ2 header".into()));
    }
    let n = u64::from_le_bytes(rest[..8].try_into().unwrap()) as usize;
    let payload = &rest[8..];
    if payload.len() != n.div_ceil(4) {
        return Err(Error::Format(format!("SLZ2 payload has {} bytes for {n} symbols", payload.len())));
    }
    Ok((0..n).map(|i| (payload[i / 4] >> (2 * (i % 4)) & 3) as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed2_round_trip() {
        let s = vec![0, 1, 2, 3, 3, 2, 1];
        let b = write_packed2(&s).unwrap();
        assert_eq!(b.len(), 4 + 8 + 2);
        assert_eq!(read_packed2(&b).unwrap(), s);
        assert!(write_packed2(&[4]).is_err());
        assert!(read_packed2(&b[..b.len() - 1]).is_err());
    }

    #[test]
    fn layout_codes() {
        for l in [Layout::Auto, Layout::Simple, Layout::Shallow(None), Layout::Shallow(Some(7)), Layout::Combined(Some(0))] {
            let (t, v) = layout_code(l);
            assert_eq!(format!("{:?}", layout_from(t, v).unwrap()), format!("{l:?}"));
        }
    }
}
