"""Writes data/toy_corpus.csv: 12 ATT&CK-labelled classes of 2 to 40 sentences.

Sentences are assembled from per-technique phrase banks with a fixed seed so
the file is reproducible.
"""

import csv
import itertools
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parents[2]

ACTORS = ["The adversary", "APT29", "The malware", "FIN7", "Attackers",
          "The implant", "Lazarus Group", "The threat actor", "The dropper",
          "Operators"]

BANKS = {
    "T1059.001": (40, ["executed encoded PowerShell commands",
                       "launched a PowerShell script",
                       "used PowerShell to download a payload",
                       "invoked PowerShell with a hidden window",
                       "ran obfuscated PowerShell one-liners"],
                  ["to stage the second payload", "on compromised hosts",
                   "through scheduled tasks", "from a remote server",
                   "to evade script logging"]),
    "T1566.001": (32, ["sent spearphishing emails with malicious attachments",
                       "delivered weaponized Word documents",
                       "attached macro-enabled spreadsheets to emails",
                       "distributed archive attachments via email"],
                  ["to targeted employees", "posing as invoices",
                   "to finance departments", "themed around recruitment",
                   "with spoofed sender addresses"]),
    "T1003": (25, ["dumped credentials from LSASS memory",
                   "extracted password hashes from the SAM database",
                   "used Mimikatz to harvest credentials",
                   "read cached domain credentials"],
              ["on domain controllers", "after gaining administrator rights",
               "to move laterally", "with a custom tool",
               "from memory of the victim host"]),
    "T1071.001": (20, ["communicated with its command and control server over HTTP",
                       "used HTTPS requests for command and control",
                       "beaconed to a web server"],
                  ["using custom headers", "every few minutes",
                   "with encrypted payloads", "hidden in normal web traffic",
                   "through a proxy"]),
    "T1486": (16, ["encrypted files on the victim system",
                   "deployed ransomware that encrypted network shares",
                   "encrypted documents with AES keys"],
              ["and demanded a ransom", "before deleting backups",
               "across the enterprise", "using a hybrid scheme",
               "after exfiltrating data"]),
    "T1547.001": (12, ["added a Run registry key",
                       "created a startup folder shortcut",
                       "modified registry run keys"],
                  ["to maintain persistence", "to survive reboots",
                   "pointing to its loader", "under the current user hive"]),
    "T1027": (9, ["obfuscated its payload with XOR encoding",
                  "packed the binary to hinder analysis",
                  "encoded strings with Base64"],
              ["to evade detection", "before execution",
               "to complicate reverse engineering"]),
    "T1105": (7, ["downloaded additional tools from a remote host",
                  "transferred a second-stage payload"],
              ["using certutil", "over HTTP", "with BITSAdmin",
               "to the temp directory"]),
    "T1083": (5, ["enumerated files and directories",
                  "searched the file system for documents"],
              ["on local drives", "of interest", "with dir commands"]),
    "T1006": (4, ["accessed the volume directly to read protected files",
                  "used direct volume access to bypass file system controls"],
              ["with NinjaCopy", "in PowerShell"]),
    "T1012": (3, ["queried the registry for installed software",
                  "read registry keys to learn about the system"],
              ["using reg query", "on the host"]),
    "T1564.001": (2, ["set the hidden attribute on its files"],
                  ["to conceal artifacts", "in the user profile"]),
}


def main():
    rng = random.Random(2026)
    rows = []
    for label, (size, verbs, tails) in BANKS.items():
        combos = list(itertools.product(ACTORS, verbs, tails))
        rng.shuffle(combos)
        for actor, verb, tail in combos[:size]:
            rows.append((f"{actor} {verb} {tail}.", label))
    rng.shuffle(rows)
    out = ROOT / "data" / "toy_corpus.csv"
    with open(out, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["sentence", "label"])
        writer.writerows(rows)
    print(out, len(rows))


if __name__ == "__main__":
    main()
