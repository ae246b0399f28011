# Regenerates fixtures/*.json from the construction tables of a markdown source.
import json
import re
import sys

TABLES = [
    ("tab:civbe", "rogozhin_10_3", "BE", "rogozhin_10_3_be.json"),
    ("tab:civv", "rogozhin_10_3", "V", "rogozhin_10_3_v.json"),
    ("tab:civvi", "rogozhin_24_2", "VI", "rogozhin_24_2_vi.json"),
]

# Printed rows that disagree with their own machine column.
ERRATA = {
    ("V", "q3 ; b1, L q3"): {
        "annotation": "tape read printed as Magrail; the row belongs to the Railroad encoding of b",
        "tape_read_override": "Railroad",
    },
    ("VI", "q22 0;1 L q10"): {
        "annotation": "printed as 1 more Monasteries; q22 -> q10 lowers the index by 12, which the table's own count convention writes as 11 more Farms",
        "command_override": "Is Being Worked, move L; Work 11 more Farms",
    },
}

ROW = re.compile(r"^\$\\;\s*(\d+)\$;\s*(.*?)&\\;(.*?)\\;\s*&(.*)\\\\\s*$")


def clean(s):
    s = s.replace(r"\;", " ").replace("$", "").replace("{", "").replace("}", "").replace("_", "")
    return re.sub(r"\s+", " ", s).strip().rstrip(";").strip()


def parse_tm(tm):
    m = re.fullmatch(r"q(\d+) ?(\w); ?HALT", tm)
    if m:
        return {"state": "q" + m[1], "read": m[2], "write": m[2], "halt": True}
    m = re.fullmatch(r"q(\d+) ?(\w); ?(\w) ?([LR]) ?q(\d+)", tm)
    if not m:
        m = re.fullmatch(r"q(\d+) ?; ?(\w)(\w), ?([LR]) ?q(\d+)", tm)
    if not m:
        sys.exit("cannot parse " + tm)
    return {"state": "q" + m[1], "read": m[2], "write": m[3], "move": m[4], "next": "q" + m[5]}


def main(source, outdir):
    text = open(source).read().splitlines()
    for label, program, ruleset, name in TABLES:
        start = next(i for i, l in enumerate(text) if "\\label{" + label + "}" in l)
        rows = []
        for line in text[start:]:
            if "\\end{tabular}" in line:
                break
            m = ROW.match(line.strip())
            if not m:
                continue
            tm = clean(m[4])
            rows.append({
                "game_state": int(m[1]),
                "tape_read": clean(m[2]),
                "command": clean(m[3]),
                "tm": tm,
                "transition": parse_tm(tm),
            })
            rows[-1].update(ERRATA.get((ruleset, tm), {}))
        doc = {"format_version": 1, "program": program, "ruleset": ruleset, "notes": "extracted from the construction tables by tools/extract_fixtures.py", "rows": rows}
        with open(f"{outdir}/{name}", "w") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")
        print(name, len(rows))


main(sys.argv[1], sys.argv[2])
