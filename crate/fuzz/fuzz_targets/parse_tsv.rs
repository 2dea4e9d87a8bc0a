#![no_main]

use libfuzzer_sys::fuzz_target;

use hsc_core::io::{parse_tsv, write_tsv};

fuzz_target!(|data: &[u8]| {
    if let Ok(table) = parse_tsv(data) {
        let again = parse_tsv(write_tsv(&table).as_bytes()).expect("serialized table parses");
        assert_eq!(again, table);
    }
});
