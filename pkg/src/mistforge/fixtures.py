"""Deterministic fixture corpus with a planted lexical/structural signal.

Two authoring styles are generated for the same program families. The
"llm" style uses verbose snake_case/camelCase identifiers, for loops,
compound assignments and if-else branches; the "human" style uses short
names, while loops and expanded assignments. Identifier choice and
literal values are drawn from a seeded stream, so the corpus is
reproducible bit for bit, and every Python sample is a self-contained
program that prints a deterministic result in milliseconds.

The signal is intentionally learnable by the reference classifier and
intentionally erasable by rename/structure perturbations — that is what
makes the bundled corpus a meaningful desk-scale attack benchmark.
"""

from __future__ import annotations

import random

from .code_model import Language
from .corpus import CorpusSample
from .style_profile import OriginLabel

LLM_FN_POOL = [
    "process_input_data", "compute_result_value", "calculate_total_output",
    "transform_data_items", "evaluate_input_list", "generate_output_text",
    "derive_final_value", "summarize_value_list", "aggregate_item_scores",
    "normalize_data_series",
]

LLM_NAME_POOL = [
    "result_value", "total_sum", "input_values", "item_index", "output_list",
    "scale_factor", "current_item", "processed_data", "helper_value",
    "final_result", "data_items", "counter_value", "temp_result",
    "running_total", "element_value", "index_position", "computed_value",
    "source_items", "threshold_value", "selected_items", "combined_text",
    "separator_text", "word_items", "maximum_value", "digit_total",
    "remaining_value", "filtered_items", "pair_total", "limit_value",
    "accumulator_value",
]

HUMAN_FN_POOL = ["f", "g", "h", "fn", "calc", "run", "go", "solve", "do_it", "w"]

HUMAN_NAME_POOL = [
    "i", "j", "k", "n", "m", "x", "y", "z", "s", "t", "a", "b", "c", "v",
    "acc", "tmp", "val", "cnt", "res", "p", "q", "r", "d", "e", "u",
    "xs", "ys", "buf", "tot", "best",
]

LLM_CLASS_POOL = ["DataProcessor", "ResultBuilder", "ValueCalculator",
                  "ItemAnalyzer", "OutputFormatter", "SeriesAggregator"]
LLM_JAVA_FN_POOL = ["computeScaledTotal", "countMatchingItems",
                    "buildJoinedText", "findMaximumValue", "describeParity",
                    "accumulateDigits"]
LLM_JAVA_NAME_POOL = [
    "inputValues", "scaleFactor", "totalSum", "itemIndex", "currentItem",
    "resultValue", "thresholdValue", "matchCount", "combinedText",
    "separatorText", "maximumValue", "digitTotal", "remainingValue",
    "helperValue", "finalResult", "elementValue", "runningTotal",
    "counterValue", "limitValue", "pairTotal",
]

HUMAN_CLASS_POOL = ["Calc", "Util", "Main", "Tmp", "Prog", "Box"]


def _pick(rng: random.Random, pool: list[str], k: int) -> list[str]:
    return rng.sample(pool, k)


# ---------------------------------------------------------------------------
# Python program families: (llm_template, human_template)
# Each template gets distinct identifier names and small literal values.
# ---------------------------------------------------------------------------

def _py_sum_scale(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    data = ", ".join(str(v[0] + d) for d in (3, 1, 4, 1, 5))
    if llm:
        return (
            f"def {fn}({nm[0]}, {nm[1]}):\n"
            f"    {nm[2]} = 0\n"
            f"    for {nm[3]} in range(len({nm[0]})):\n"
            f"        {nm[2]} += {nm[0]}[{nm[3]}] * {nm[1]}\n"
            f"    return {nm[2]}\n"
            f"\n"
            f"print({fn}([{data}], {v[1]}))\n"
        )
    return (
        f"def {fn}({nm[0]}, {nm[1]}):\n"
        f"    {nm[2]} = 0\n"
        f"    {nm[3]} = 0\n"
        f"    while {nm[3]} < len({nm[0]}):\n"
        f"        {nm[2]} = {nm[2]} + {nm[0]}[{nm[3]}] * {nm[1]}\n"
        f"        {nm[3]} = {nm[3]} + 1\n"
        f"    return {nm[2]}\n"
        f"\n"
        f"print({fn}([{data}], {v[1]}))\n"
    )


def _py_count_over(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    data = ", ".join(str(v[0] + d) for d in (2, 9, 4, 7, 1, 8))
    if llm:
        return (
            f"def {fn}({nm[0]}, {nm[1]}):\n"
            f"    {nm[2]} = 0\n"
            f"    for {nm[3]} in {nm[0]}:\n"
            f"        if {nm[3]} > {nm[1]}:\n"
            f"            {nm[2]} += 1\n"
            f"        else:\n"
            f"            {nm[2]} += 0\n"
            f"    return {nm[2]}\n"
            f"\n"
            f"print({fn}([{data}], {v[1]}))\n"
        )
    return (
        f"def {fn}({nm[0]}, {nm[1]}):\n"
        f"    {nm[2]} = 0\n"
        f"    {nm[3]} = 0\n"
        f"    while {nm[3]} < len({nm[0]}):\n"
        f"        if {nm[0]}[{nm[3]}] > {nm[1]}:\n"
        f"            {nm[2]} = {nm[2]} + 1\n"
        f"        {nm[3]} = {nm[3]} + 1\n"
        f"    return {nm[2]}\n"
        f"\n"
        f"print({fn}([{data}], {v[1]}))\n"
    )


def _py_join_text(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    words = '"ab", "cd", "ef", "gh"'
    if llm:
        return (
            f"def {fn}({nm[0]}, {nm[1]}):\n"
            f"    {nm[2]} = \"\"\n"
            f"    for {nm[3]} in range(len({nm[0]})):\n"
            f"        {nm[2]} += {nm[0]}[{nm[3]}]\n"
            f"        {nm[2]} += {nm[1]}\n"
            f"    return {nm[2]}\n"
            f"\n"
            f"print({fn}([{words}], \"-\"))\n"
        )
    return (
        f"def {fn}({nm[0]}, {nm[1]}):\n"
        f"    {nm[2]} = \"\"\n"
        f"    {nm[3]} = 0\n"
        f"    while {nm[3]} < len({nm[0]}):\n"
        f"        {nm[2]} = {nm[2]} + {nm[0]}[{nm[3]}] + {nm[1]}\n"
        f"        {nm[3]} = {nm[3]} + 1\n"
        f"    return {nm[2]}\n"
        f"\n"
        f"print({fn}([{words}], \"-\"))\n"
    )


def _py_maximum(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    data = ", ".join(str(v[0] + d) for d in (4, 11, 2, 9, 6))
    if llm:
        return (
            f"def {fn}({nm[0]}):\n"
            f"    {nm[1]} = {nm[0]}[0]\n"
            f"    for {nm[2]} in range(1, len({nm[0]})):\n"
            f"        if {nm[0]}[{nm[2]}] > {nm[1]}:\n"
            f"            {nm[1]} = {nm[0]}[{nm[2]}]\n"
            f"        else:\n"
            f"            {nm[1]} += 0\n"
            f"    return {nm[1]}\n"
            f"\n"
            f"print({fn}([{data}]))\n"
        )
    return (
        f"def {fn}({nm[0]}):\n"
        f"    {nm[1]} = {nm[0]}[0]\n"
        f"    {nm[2]} = 1\n"
        f"    while {nm[2]} < len({nm[0]}):\n"
        f"        if {nm[0]}[{nm[2]}] > {nm[1]}:\n"
        f"            {nm[1]} = {nm[0]}[{nm[2]}]\n"
        f"        {nm[2]} = {nm[2]} + 1\n"
        f"    return {nm[1]}\n"
        f"\n"
        f"print({fn}([{data}]))\n"
    )


def _py_parity(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"def {fn}({nm[0]}):\n"
            f"    if {nm[0]} % 2 == 0:\n"
            f"        {nm[1]} = \"even\"\n"
            f"    else:\n"
            f"        {nm[1]} = \"odd\"\n"
            f"    {nm[2]} = 0\n"
            f"    for {nm[3]} in range({nm[0]}):\n"
            f"        {nm[2]} += {nm[3]}\n"
            f"    return {nm[1]} + str({nm[2]})\n"
            f"\n"
            f"print({fn}({v[0] + 5}))\n"
        )
    return (
        f"def {fn}({nm[0]}):\n"
        f"    {nm[1]} = \"odd\"\n"
        f"    if {nm[0]} % 2 == 0:\n"
        f"        {nm[1]} = \"even\"\n"
        f"    {nm[2]} = 0\n"
        f"    {nm[3]} = 0\n"
        f"    while {nm[3]} < {nm[0]}:\n"
        f"        {nm[2]} = {nm[2]} + {nm[3]}\n"
        f"        {nm[3]} = {nm[3]} + 1\n"
        f"    return {nm[1]} + str({nm[2]})\n"
        f"\n"
        f"print({fn}({v[0] + 5}))\n"
    )


def _py_digits(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    seed_value = 1000 + v[0] * 37 + v[1]
    if llm:
        return (
            f"def {fn}({nm[0]}):\n"
            f"    {nm[1]} = 0\n"
            f"    for {nm[2]} in str({nm[0]}):\n"
            f"        {nm[1]} += int({nm[2]})\n"
            f"    return {nm[1]}\n"
            f"\n"
            f"print({fn}({seed_value}))\n"
        )
    return (
        f"def {fn}({nm[0]}):\n"
        f"    {nm[1]} = 0\n"
        f"    {nm[2]} = {nm[0]}\n"
        f"    while {nm[2]} > 0:\n"
        f"        {nm[1]} = {nm[1]} + {nm[2]} % 10\n"
        f"        {nm[2]} = {nm[2]} // 10\n"
        f"    return {nm[1]}\n"
        f"\n"
        f"print({fn}({seed_value}))\n"
    )


def _py_filter_positive(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    data = ", ".join(str(d) for d in (v[0], -v[1], v[0] + 3, -1, v[1] + 2, 0))
    if llm:
        return (
            f"def {fn}({nm[0]}):\n"
            f"    {nm[1]} = []\n"
            f"    for {nm[2]} in {nm[0]}:\n"
            f"        if {nm[2]} <= 0:\n"
            f"            continue\n"
            f"        {nm[1]}.append({nm[2]} * 2)\n"
            f"    return {nm[1]}\n"
            f"\n"
            f"print({fn}([{data}]))\n"
        )
    return (
        f"def {fn}({nm[0]}):\n"
        f"    {nm[1]} = []\n"
        f"    {nm[2]} = 0\n"
        f"    while {nm[2]} < len({nm[0]}):\n"
        f"        if {nm[0]}[{nm[2]}] > 0:\n"
        f"            {nm[1]}.append({nm[0]}[{nm[2]}] * 2)\n"
        f"        {nm[2]} = {nm[2]} + 1\n"
        f"    return {nm[1]}\n"
        f"\n"
        f"print({fn}([{data}]))\n"
    )


def _py_pair_total(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"def {fn}({nm[0]}):\n"
            f"    {nm[1]} = 0\n"
            f"    for {nm[2]} in range({nm[0]}):\n"
            f"        for {nm[3]} in range({nm[2]}):\n"
            f"            {nm[1]} += {nm[2]} * {nm[3]}\n"
            f"    return {nm[1]}\n"
            f"\n"
            f"print({fn}({v[0] % 5 + 4}))\n"
        )
    return (
        f"def {fn}({nm[0]}):\n"
        f"    {nm[1]} = 0\n"
        f"    {nm[2]} = 0\n"
        f"    while {nm[2]} < {nm[0]}:\n"
        f"        {nm[3]} = 0\n"
        f"        while {nm[3]} < {nm[2]}:\n"
        f"            {nm[1]} = {nm[1]} + {nm[2]} * {nm[3]}\n"
        f"            {nm[3]} = {nm[3]} + 1\n"
        f"        {nm[2]} = {nm[2]} + 1\n"
        f"    return {nm[1]}\n"
        f"\n"
        f"print({fn}({v[0] % 5 + 4}))\n"
    )


def _py_clamp_steps(llm: bool, fn: str, nm: list[str], v: list[int]) -> str:
    start = 90 + v[0] * 7
    if llm:
        return (
            f"def {fn}({nm[0]}, {nm[1]}):\n"
            f"    {nm[2]} = {nm[0]}\n"
            f"    for {nm[3]} in range(12):\n"
            f"        if {nm[2]} > {nm[1]}:\n"
            f"            {nm[2]} -= {nm[1]}\n"
            f"        else:\n"
            f"            {nm[2]} += 1\n"
            f"    return {nm[2]}\n"
            f"\n"
            f"print({fn}({start}, {v[1] + 3}))\n"
        )
    return (
        f"def {fn}({nm[0]}, {nm[1]}):\n"
        f"    {nm[2]} = {nm[0]}\n"
        f"    {nm[3]} = 0\n"
        f"    while {nm[3]} < 12:\n"
        f"        if {nm[2]} > {nm[1]}:\n"
        f"            {nm[2]} = {nm[2]} - {nm[1]}\n"
        f"        else:\n"
        f"            {nm[2]} = {nm[2]} + 1\n"
        f"        {nm[3]} = {nm[3]} + 1\n"
        f"    return {nm[2]}\n"
        f"\n"
        f"print({fn}({start}, {v[1] + 3}))\n"
    )


PY_FAMILIES = [
    _py_sum_scale, _py_count_over, _py_join_text, _py_maximum,
    _py_parity, _py_digits, _py_filter_positive, _py_pair_total,
    _py_clamp_steps,
]


# ---------------------------------------------------------------------------
# Java program families
# ---------------------------------------------------------------------------

def _java_sum_scale(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    data = ", ".join(str(v[0] + d) for d in (3, 1, 4, 1, 5))
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static int {fn}(int[] {nm[0]}, int {nm[1]}) {{\n"
            f"        int {nm[2]} = 0;\n"
            f"        for (int {nm[3]} = 0; {nm[3]} < {nm[0]}.length; {nm[3]}++) {{\n"
            f"            {nm[2]} += {nm[0]}[{nm[3]}] * {nm[1]};\n"
            f"        }}\n"
            f"        System.out.println(\"total ready\");\n"
            f"        return {nm[2]};\n"
            f"    }}\n"
            f"\n"
            f"    public static void main(String[] args) {{\n"
            f"        int[] {nm[4]} = new int[] {{{data}}};\n"
            f"        System.out.println({fn}({nm[4]}, {v[1]}));\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static int {fn}(int[] {nm[0]}, int {nm[1]}) {{\n"
        f"        int {nm[2]} = 0;\n"
        f"        int {nm[3]} = 0;\n"
        f"        while ({nm[3]} < {nm[0]}.length) {{\n"
        f"            {nm[2]} = {nm[2]} + {nm[0]}[{nm[3]}] * {nm[1]};\n"
        f"            {nm[3]} = {nm[3]} + 1;\n"
        f"        }}\n"
        f"        return {nm[2]};\n"
        f"    }}\n"
        f"\n"
        f"    public static void main(String[] args) {{\n"
        f"        int[] {nm[4]} = new int[] {{{data}}};\n"
        f"        System.out.println({fn}({nm[4]}, {v[1]}));\n"
        f"    }}\n"
        f"}}\n"
    )


def _java_count_over(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static int {fn}(int[] {nm[0]}, int {nm[1]}) {{\n"
            f"        int {nm[2]} = 0;\n"
            f"        for (int {nm[3]} = 0; {nm[3]} < {nm[0]}.length; {nm[3]}++) {{\n"
            f"            if ({nm[0]}[{nm[3]}] > {nm[1]}) {{\n"
            f"                {nm[2]} += 1;\n"
            f"            }} else {{\n"
            f"                {nm[2]} += 0;\n"
            f"            }}\n"
            f"        }}\n"
            f"        return {nm[2]};\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static int {fn}(int[] {nm[0]}, int {nm[1]}) {{\n"
        f"        int {nm[2]} = 0;\n"
        f"        int {nm[3]} = 0;\n"
        f"        while ({nm[3]} < {nm[0]}.length) {{\n"
        f"            if ({nm[0]}[{nm[3]}] > {nm[1]}) {{\n"
        f"                {nm[2]} = {nm[2]} + 1;\n"
        f"            }}\n"
        f"            {nm[3]} = {nm[3]} + 1;\n"
        f"        }}\n"
        f"        return {nm[2]};\n"
        f"    }}\n"
        f"}}\n"
    )


def _java_join_text(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static String {fn}(String[] {nm[0]}, String {nm[1]}) {{\n"
            f"        String {nm[2]} = \"\";\n"
            f"        for (int {nm[3]} = 0; {nm[3]} < {nm[0]}.length; {nm[3]}++) {{\n"
            f"            {nm[2]} += {nm[0]}[{nm[3]}];\n"
            f"            {nm[2]} += {nm[1]};\n"
            f"        }}\n"
            f"        System.out.println(\"joined text\");\n"
            f"        return {nm[2]};\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static String {fn}(String[] {nm[0]}, String {nm[1]}) {{\n"
        f"        String {nm[2]} = \"\";\n"
        f"        int {nm[3]} = 0;\n"
        f"        while ({nm[3]} < {nm[0]}.length) {{\n"
        f"            {nm[2]} = {nm[2]} + {nm[0]}[{nm[3]}] + {nm[1]};\n"
        f"            {nm[3]} = {nm[3]} + 1;\n"
        f"        }}\n"
        f"        return {nm[2]};\n"
        f"    }}\n"
        f"}}\n"
    )


def _java_maximum(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static int {fn}(int[] {nm[0]}) {{\n"
            f"        int {nm[1]} = {nm[0]}[0];\n"
            f"        for (int {nm[2]} = 1; {nm[2]} < {nm[0]}.length; {nm[2]}++) {{\n"
            f"            if ({nm[0]}[{nm[2]}] > {nm[1]}) {{\n"
            f"                {nm[1]} = {nm[0]}[{nm[2]}];\n"
            f"            }}\n"
            f"        }}\n"
            f"        return {nm[1]};\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static int {fn}(int[] {nm[0]}) {{\n"
        f"        int {nm[1]} = {nm[0]}[0];\n"
        f"        int {nm[2]} = 1;\n"
        f"        while ({nm[2]} < {nm[0]}.length) {{\n"
        f"            if ({nm[0]}[{nm[2]}] > {nm[1]}) {{\n"
        f"                {nm[1]} = {nm[0]}[{nm[2]}];\n"
        f"            }}\n"
        f"            {nm[2]} = {nm[2]} + 1;\n"
        f"        }}\n"
        f"        return {nm[1]};\n"
        f"    }}\n"
        f"}}\n"
    )


def _java_digits(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static int {fn}(int {nm[0]}) {{\n"
            f"        int {nm[1]} = 0;\n"
            f"        int {nm[2]} = {nm[0]};\n"
            f"        for (int {nm[3]} = 0; {nm[3]} < 10; {nm[3]}++) {{\n"
            f"            {nm[1]} += {nm[2]} % 10;\n"
            f"            {nm[2]} /= 10;\n"
            f"        }}\n"
            f"        System.out.println(\"digit pass done\");\n"
            f"        return {nm[1]};\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static int {fn}(int {nm[0]}) {{\n"
        f"        int {nm[1]} = 0;\n"
        f"        int {nm[2]} = {nm[0]};\n"
        f"        while ({nm[2]} > 0) {{\n"
        f"            {nm[1]} = {nm[1]} + {nm[2]} % 10;\n"
        f"            {nm[2]} = {nm[2]} / 10;\n"
        f"        }}\n"
        f"        return {nm[1]};\n"
        f"    }}\n"
        f"}}\n"
    )


def _java_clamp(llm: bool, cls: str, fn: str, nm: list[str], v: list[int]) -> str:
    if llm:
        return (
            f"public class {cls} {{\n"
            f"    public static int {fn}(int {nm[0]}, int {nm[1]}) {{\n"
            f"        int {nm[2]} = {nm[0]};\n"
            f"        for (int {nm[3]} = 0; {nm[3]} < 12; {nm[3]}++) {{\n"
            f"            if ({nm[2]} > {nm[1]}) {{\n"
            f"                {nm[2]} -= {nm[1]};\n"
            f"            }} else {{\n"
            f"                {nm[2]} += 1;\n"
            f"            }}\n"
            f"        }}\n"
            f"        return {nm[2]};\n"
            f"    }}\n"
            f"}}\n"
        )
    return (
        f"public class {cls} {{\n"
        f"    public static int {fn}(int {nm[0]}, int {nm[1]}) {{\n"
        f"        int {nm[2]} = {nm[0]};\n"
        f"        int {nm[3]} = 0;\n"
        f"        while ({nm[3]} < 12) {{\n"
        f"            if ({nm[2]} > {nm[1]}) {{\n"
        f"                {nm[2]} = {nm[2]} - {nm[1]};\n"
        f"            }} else {{\n"
        f"                {nm[2]} = {nm[2]} + 1;\n"
        f"            }}\n"
        f"            {nm[3]} = {nm[3]} + 1;\n"
        f"        }}\n"
        f"        return {nm[2]};\n"
        f"    }}\n"
        f"}}\n"
    )


JAVA_FAMILIES = [
    _java_sum_scale, _java_count_over, _java_join_text, _java_maximum,
    _java_digits, _java_clamp,
]


# ---------------------------------------------------------------------------
# Corpus assembly
# ---------------------------------------------------------------------------

def generate_corpus(language: Language, count: int, seed: int,
                    id_prefix: str = "fx") -> list[CorpusSample]:
    """Deterministic corpus of `count` samples, half llm-styled and half
    human-styled, cycling through the program families."""
    rng = random.Random(seed)
    samples: list[CorpusSample] = []
    families = PY_FAMILIES if language is Language.PYTHON else JAVA_FAMILIES
    for idx in range(count):
        family = families[idx % len(families)]
        llm = idx % 2 == 0
        vals = [rng.randint(1, 9), rng.randint(1, 9)]
        if language is Language.PYTHON:
            fn = rng.choice(LLM_FN_POOL if llm else HUMAN_FN_POOL)
            names = _pick(rng, LLM_NAME_POOL if llm else HUMAN_NAME_POOL, 5)
            code = family(llm, fn, names, vals)
        else:
            cls = rng.choice(LLM_CLASS_POOL if llm else HUMAN_CLASS_POOL)
            fn = rng.choice(LLM_JAVA_FN_POOL if llm else HUMAN_FN_POOL)
            names = _pick(rng, LLM_JAVA_NAME_POOL if llm else HUMAN_NAME_POOL, 5)
            code = family(llm, cls, fn, names, vals)
        samples.append(CorpusSample(
            id=f"{id_prefix}-{language.value}-{idx:03d}",
            language=language,
            label=OriginLabel.LLM if llm else OriginLabel.HUMAN,
            code=code,
        ))
    return samples


def fixture_corpus(seed: int = 7) -> list[CorpusSample]:
    """The bundled desk-scale test corpus: 50 Python + 50 Java snippets."""
    return (generate_corpus(Language.PYTHON, 50, seed, "fx")
            + generate_corpus(Language.JAVA, 50, seed + 1, "fx"))


def training_corpus(seed: int = 11, per_language: int = 200) -> list[CorpusSample]:
    """A larger disjoint draw from the same distribution, for training the
    reference classifier."""
    return (generate_corpus(Language.PYTHON, per_language, seed, "tr")
            + generate_corpus(Language.JAVA, per_language, seed + 1, "tr"))
