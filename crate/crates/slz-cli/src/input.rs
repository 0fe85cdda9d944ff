//! Reading texts and translating their symbols.

use std::path::Path;

use slz::container::read_packed2;

use crate::CliError;

/// A text ready for indexing. Raw inputs whose bytes do not fit below σ are
/// compacted to ranks; `alphabet` maps ranks back.
#[derive(Clone, Debug)]
pub struct Input {
    pub symbols: Vec<u32>,
    pub sigma: u32,
    pub alphabet: Option<Vec<u32>>,
}

impl Input {
    /// The symbol as it appeared in the input.
    pub fn original(&self, c: u32) -> u32 {
        self.alphabet.as_ref().map_or(c, |a| a[c as usize])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, packed: bool, sigma: Option<u32>) -> Result<Input, CliError> {
    let bytes = read(path)?;
    if packed {
        let symbols = read_packed2(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        from_symbols(symbols, sigma.unwrap_or(4))
    } else {
        from_bytes(&bytes, sigma.unwrap_or(256))
    }
}

fn from_symbols(symbols: Vec<u32>, sigma: u32) -> Result<Input, CliError> {
    if symbols.is_empty() {
        return Err(CliError::Input("empty input".into()));
    }
    if let Some(c) = symbols.iter().find(|&&c| c >= sigma) {
        return Err(CliError::Input(format!("symbol {c} outside an alphabet of size {sigma}")));
    }
    Ok(Input { symbols, sigma, alphabet: None })
}

pub fn from_bytes(bytes: &[u8], sigma: u32) -> Result<Input, CliError> {
    if bytes.is_empty() {
        return Err(CliError::Input("empty input".into()));
    }
    let mut seen = [false; 256];
    bytes.iter().for_each(|&b| seen[b as usize] = true);
    let max = seen.iter().rposition(|&s| s).unwrap() as u32;
    if max < sigma {
        return Ok(Input { symbols: bytes.iter().map(|&b| b as u32).collect(), sigma, alphabet: None });
    }
    let alphabet: Vec<u32> = (0..256u32).filter(|&b| seen[b as usize]).collect();
    if alphabet.len() > sigma as usize {
        return Err(CliError::Input(format!("input uses {} distinct bytes, more than σ = {sigma}", alphabet.len())));
    }
    let mut rank = [0u32; 256];
    alphabet.iter().enumerate().for_each(|(r, &b)| rank[b as usize] = r as u32);
    let symbols = bytes.iter().map(|&b| rank[b as usize]).collect();
    Ok(Input { symbols, sigma, alphabet: Some(alphabet) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compaction() {
        let i = from_bytes(b"0110", 2).unwrap();
        assert_eq!(i.symbols, vec![0, 1, 1, 0]);
        assert_eq!(i.original(1), b'1' as u32);
        let i = from_bytes(&[0, 1, 1], 2).unwrap();
        assert!(i.alphabet.is_none());
        assert!(from_bytes(b"abc", 2).is_err());
        assert!(matches!(from_bytes(b"", 256), Err(CliError::Input(m)) if m == "empty input"));
    }
}
