#!/usr/bin/env python3
"""Regenerate src/unicode_tables.inc.

Emits sorted codepoint ranges for the Unicode punctuation (P*) and
separator (Z*) general categories. Run against the CPython unicodedata
of the toolchain you want to pin and commit the result.
"""
import sys
import unicodedata


def ranges_for(prefix: str):
    ranges = []
    start = None
    prev = None
    for cp in range(0x110000):
        cat = unicodedata.category(chr(cp))
        if cat.startswith(prefix):
            if start is None:
                start = cp
            prev = cp
        else:
            if start is not None:
                ranges.append((start, prev))
                start = None
    if start is not None:
        ranges.append((start, prev))
    return ranges


def emit(name: str, ranges) -> str:
    lines = [f"inline constexpr CodepointRange {name}[] = {{"]
    for lo, hi in ranges:
        lines.append(f"    {{0x{lo:04X}, 0x{hi:04X}}},")
    lines.append("};")
    return "\n".join(lines)


def main():
    punct = ranges_for("P")
    sep = ranges_for("Z")
    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py (unicodedata %s). Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("// Codepoint ranges for Unicode general categories P* and Z*.\n\n")
    out.write("struct CodepointRange { char32_t lo; char32_t hi; };\n\n")
    out.write(emit("kPunctuationRanges", punct))
    out.write("\n\n")
    out.write(emit("kSeparatorRanges", sep))
    out.write("\n")


if __name__ == "__main__":
    main()
