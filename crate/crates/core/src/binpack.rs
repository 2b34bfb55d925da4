use std::fmt;
use std::str::FromStr;

use crate::error::BinPackingError;

/// A bin packing decision instance: can `items` be packed into at most
/// `bins` bins of capacity `bin_size`?
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinPackingInstance {
    items: Vec<usize>,
    bin_size: usize,
    bins: usize,
}

impl BinPackingInstance {
    pub fn new(items: Vec<usize>, bin_size: usize, bins: usize) -> Result<Self, BinPackingError> {
        if items.contains(&0) {
            return Err(BinPackingError::ZeroItem);
        }
        if bin_size == 0 {
            return Err(BinPackingError::ZeroBinSize);
        }
        if bins == 0 {
            return Err(BinPackingError::ZeroBins);
        }
        Ok(BinPackingInstance {
            items,
            bin_size,
            bins,
        })
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn bin_size(&self) -> usize {
        self.bin_size
    }

    pub fn bins(&self) -> usize {
        self.bins
    }
}

/// `items 2 2 3 ; binsize 5 ; bins 2`
impl fmt::Display for BinPackingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("items")?;
        for n in &self.items {
            write!(f, " {n}")?;
        }
        write!(f, " ; binsize {} ; bins {}", self.bin_size, self.bins)
    }
}

impl FromStr for BinPackingInstance {
    type Err = BinPackingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut items = None;
        let mut bin_size = None;
        let mut bins = None;
        let number = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| BinPackingError::Syntax(format!("expected an integer, got `{tok}`")))
        };
        for clause in s.trim().split(';') {
            let mut toks = clause.split_whitespace();
            let Some(key) = toks.next() else {
                return Err(BinPackingError::Syntax("empty clause".into()));
            };
            let values = toks.map(number).collect::<Result<Vec<_>, _>>()?;
            let slot = match key {
                "items" => {
                    if items.replace(values).is_some() {
                        return Err(BinPackingError::Syntax("`items` given twice".into()));
                    }
                    continue;
                }
                "binsize" => &mut bin_size,
                "bins" => &mut bins,
                other => return Err(BinPackingError::Syntax(format!("unknown key `{other}`"))),
            };
            match values.as_slice() {
                [v] if slot.is_none() => *slot = Some(*v),
                [_] => return Err(BinPackingError::Syntax(format!("`{key}` given twice"))),
                _ => return Err(BinPackingError::Syntax(format!("`{key}` takes one value"))),
            }
        }
        BinPackingInstance::new(
            items.ok_or_else(|| BinPackingError::Syntax("missing `items`".into()))?,
            bin_size.ok_or_else(|| BinPackingError::Syntax("missing `binsize`".into()))?,
            bins.ok_or_else(|| BinPackingError::Syntax("missing `bins`".into()))?,
        )
    }
}
