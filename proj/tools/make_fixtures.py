#!/usr/bin/env python3
"""Writes the bundled fixtures under data/.

    python3 tools/make_fixtures.py [data_dir]

Output is deterministic; the generated files are committed so the build
never needs Python.
"""

import json
import pathlib
import sys

CLASSES = {
    "Q5": "human",
    "Q6256": "country",
    "Q6999": "astronomical object",
    "Q515": "city",
    "Q34770": "language",
    "Q8142": "currency",
    "Q3918": "university",
    "Q28640": "profession",
    "Q9174": "religion",
    "Q5107": "continent",
    "Q11276": "globular cluster",
    "Q318": "galaxy",
    "Q1491746": "galaxy group",
    "Q8928": "constellation",
    "Q634": "planet",
    "Q2537": "natural satellite",
    "Q523": "star",
    "Q10527": "planetary system",
}

PROPERTIES = {
    "P17": "country",
    "P19": "place of birth",
    "P20": "place of death",
    "P26": "spouse",
    "P27": "country of citizenship",
    "P30": "continent",
    "P35": "head of state",
    "P36": "capital",
    "P37": "official language",
    "P38": "currency",
    "P47": "shares border with",
    "P59": "constellation",
    "P61": "discoverer or inventor",
    "P69": "educated at",
    "P106": "occupation",
    "P140": "religion or worldview",
    "P361": "part of",
    "P397": "parent astronomical body",
    "P569": "date of birth",
    "P570": "date of death",
    "P575": "time of discovery or invention",
    "P1082": "population",
    "P3373": "sibling",
}
EXTERNAL_ID_PROPERTIES = {"P214": "VIAF ID"}

# id: (label, [types], extra fields)
PERSONS = {
    "Q184874": ("Nicolas Louis de Lacaille", ["Lacaille", "Abbé de Lacaille"], "male", True, "Lacaille"),
    "Q935": ("Isaac Newton", ["Sir Isaac Newton", "Newton"], "male", True, "Newton"),
    "Q307": ("Galileo Galilei", ["Galileo"], "male", True, "Galilei"),
    "Q7186": ("Marie Curie", ["Maria Skłodowska-Curie", "Madame Curie"], "female", True, "Curie"),
    "Q37463": ("Pierre Curie", [], "male", True, "Curie"),
    "Q937": ("Albert Einstein", ["Einstein"], "male", True, "Einstein"),
    "Q76346": ("Mileva Marić", ["Mileva Marić-Einstein"], "female", True, "Marić"),
    "Q68761": ("Elsa Einstein", [], "female", True, "Einstein"),
    "Q14277": ("William Herschel", ["Frederick William Herschel"], "male", True, "Herschel"),
    "Q153830": ("Caroline Herschel", ["Caroline Lucretia Herschel"], "female", True, "Herschel"),
    "Q7259": ("Ada Lovelace", ["Augusta Ada King", "Countess of Lovelace"], "female", True, "Lovelace"),
    "Q47434": ("Edmond Halley", ["Edmund Halley", "Halley"], "male", True, "Halley"),
    "Q3052772": ("Emmanuel Macron", ["Macron"], "male", False, "Macron"),
    "Q2105": ("François Hollande", ["Hollande"], "male", False, "Hollande"),
    "Q567": ("Angela Merkel", ["Merkel"], "female", False, "Merkel"),
    "Q9682": ("Elizabeth II", ["Queen Elizabeth II"], "female", True, None),
    "Q43274": ("Charles III", ["King Charles III"], "male", False, None),
    "Q3805": ("Sergio Mattarella", ["Mattarella"], "male", False, "Mattarella"),
    "Q11812": ("Andrzej Duda", ["Duda"], "male", False, "Duda"),
}

# id: (label, alt labels, types)
THINGS = {
    # countries
    "Q142": ("France", ["French Republic"], ["Q6256"]),
    "Q183": ("Germany", ["Federal Republic of Germany"], ["Q6256"]),
    "Q36": ("Poland", ["Republic of Poland"], ["Q6256"]),
    "Q38": ("Italy", ["Italian Republic"], ["Q6256"]),
    "Q145": ("United Kingdom", ["UK", "Great Britain"], ["Q6256"]),
    "Q39": ("Switzerland", ["Swiss Confederation"], ["Q6256"]),
    "Q30": ("United States of America", ["United States", "USA"], ["Q6256"]),
    "Q55": ("Netherlands", ["Holland"], ["Q6256"]),
    # cities
    "Q90": ("Paris", ["City of Light"], ["Q515"]),
    "Q640937": ("Rumigny", [], ["Q515"]),
    "Q270": ("Warsaw", [], ["Q515"]),
    "Q220": ("Rome", ["Eternal City"], ["Q515"]),
    "Q13375": ("Pisa", [], ["Q515"]),
    "Q2044": ("Florence", ["Firenze"], ["Q515"]),
    "Q64": ("Berlin", [], ["Q515"]),
    "Q3012": ("Ulm", [], ["Q515"]),
    "Q1715": ("Hanover", ["Hannover"], ["Q515"]),
    "Q84": ("London", [], ["Q515"]),
    "Q212826": ("Slough", [], ["Q515"]),
    "Q1152380": ("Woolsthorpe-by-Colsterworth", [], ["Q515"]),
    "Q70": ("Bern", ["Berne"], ["Q515"]),
    "Q138518": ("Princeton", [], ["Q515"]),
    "Q61": ("Washington, D.C.", ["Washington"], ["Q515"]),
    "Q727": ("Amsterdam", [], ["Q515"]),
    "Q34217": ("Oxford", [], ["Q515"]),
    # languages, currencies, continents
    "Q150": ("French", ["French language"], ["Q34770"]),
    "Q188": ("German", ["German language"], ["Q34770"]),
    "Q809": ("Polish", ["Polish language"], ["Q34770"]),
    "Q652": ("Italian", ["Italian language"], ["Q34770"]),
    "Q1860": ("English", ["English language"], ["Q34770"]),
    "Q7411": ("Dutch", ["Dutch language"], ["Q34770"]),
    "Q4916": ("euro", ["EUR"], ["Q8142"]),
    "Q123213": ("złoty", ["Polish złoty"], ["Q8142"]),
    "Q25224": ("pound sterling", ["British pound"], ["Q8142"]),
    "Q25344": ("Swiss franc", [], ["Q8142"]),
    "Q4917": ("United States dollar", ["US dollar"], ["Q8142"]),
    "Q46": ("Europe", [], ["Q5107"]),
    "Q49": ("North America", [], ["Q5107"]),
    # occupations, religions, universities
    "Q11063": ("astronomer", [], ["Q28640"]),
    "Q170790": ("mathematician", [], ["Q28640"]),
    "Q169470": ("physicist", [], ["Q28640"]),
    "Q593644": ("chemist", [], ["Q28640"]),
    "Q9592": ("Catholic Church", ["Roman Catholic Church", "Roman Apostolic Catholic Church"], ["Q9174"]),
    "Q6423963": ("Anglicanism", ["Church of England"], ["Q9174"]),
    "Q209842": ("University of Paris", ["Sorbonne"], ["Q3918"]),
    "Q35794": ("University of Cambridge", ["Cambridge University"], ["Q3918"]),
    "Q645663": ("University of Pisa", [], ["Q3918"]),
    "Q11942": ("ETH Zurich", ["Swiss Federal Institute of Technology in Zurich"], ["Q3918"]),
    "Q34433": ("University of Oxford", ["Oxford University"], ["Q3918"]),
    # sky
    "Q321": ("Milky Way", ["the Galaxy"], ["Q318", "Q6999"]),
    "Q11019": ("Local Group", [], ["Q1491746", "Q6999"]),
    "Q544": ("Solar System", [], ["Q10527", "Q6999"]),
    "Q525": ("Sun", ["Sol"], ["Q523", "Q6999"]),
    "Q319": ("Jupiter", [], ["Q634", "Q6999"]),
    "Q324": ("Uranus", [], ["Q634", "Q6999"]),
    "Q3123": ("Io", ["Jupiter I"], ["Q2537", "Q6999"]),
    "Q3143": ("Europa", ["Jupiter II"], ["Q2537", "Q6999"]),
    "Q3169": ("Ganymede", ["Jupiter III"], ["Q2537", "Q6999"]),
    "Q3134": ("Callisto", ["Jupiter IV"], ["Q2537", "Q6999"]),
    "Q1136383": ("NGC 4833", [], ["Q11276", "Q6999"]),
    "Q1136375": ("47 Tucanae", ["NGC 104"], ["Q11276", "Q6999"]),
    "Q1136401": ("NGC 6397", [], ["Q11276", "Q6999"]),
    "Q6395": ("Omega Centauri", ["NGC 5139"], ["Q11276", "Q6999"]),
    "Q14260": ("Messier 13", ["Great Globular Cluster in Hercules", "M13"], ["Q11276", "Q6999"]),
    "Q10452": ("Musca", [], ["Q8928"]),
    "Q10498": ("Tucana", [], ["Q8928"]),
    "Q10481": ("Ara", [], ["Q8928"]),
    "Q8667": ("Centaurus", [], ["Q8928"]),
    "Q8679": ("Hercules", [], ["Q8928"]),
}


def date(iso, label):
    return {"literal": {"kind": "date", "value": iso, "label": label}}


def number(n):
    return {"literal": {"kind": "number", "value": str(n), "label": f"{n:,}"}}


def ent(q):
    return {"entity": q}


# (s, p, o, end_time)
FACTS = [
    # Lacaille
    ("Q184874", "P27", ent("Q142")),
    ("Q184874", "P19", ent("Q640937")),
    ("Q184874", "P20", ent("Q90")),
    ("Q184874", "P140", ent("Q9592")),
    ("Q184874", "P106", ent("Q11063")),
    ("Q184874", "P106", ent("Q170790")),
    ("Q184874", "P69", ent("Q209842")),
    ("Q184874", "P569", date("1713-03-15", "15 March 1713")),
    ("Q184874", "P570", date("1762-03-21", "21 March 1762")),
    # Newton
    ("Q935", "P27", ent("Q145")),
    ("Q935", "P19", ent("Q1152380")),
    ("Q935", "P20", ent("Q84")),
    ("Q935", "P140", ent("Q6423963")),
    ("Q935", "P106", ent("Q169470")),
    ("Q935", "P106", ent("Q170790")),
    ("Q935", "P106", ent("Q11063")),
    ("Q935", "P69", ent("Q35794")),
    ("Q935", "P569", date("1643-01-04", "4 January 1643")),
    ("Q935", "P570", date("1727-03-31", "31 March 1727")),
    # Galileo
    ("Q307", "P27", ent("Q38")),
    ("Q307", "P19", ent("Q13375")),
    ("Q307", "P20", ent("Q2044")),
    ("Q307", "P140", ent("Q9592")),
    ("Q307", "P106", ent("Q11063")),
    ("Q307", "P106", ent("Q169470")),
    ("Q307", "P106", ent("Q170790")),
    ("Q307", "P69", ent("Q645663")),
    ("Q307", "P569", date("1564-02-15", "15 February 1564")),
    ("Q307", "P570", date("1642-01-08", "8 January 1642")),
    # Curies
    ("Q7186", "P27", ent("Q36")),
    ("Q7186", "P27", ent("Q142")),
    ("Q7186", "P19", ent("Q270")),
    ("Q7186", "P26", ent("Q37463"), "1906-04-19"),
    ("Q7186", "P106", ent("Q169470")),
    ("Q7186", "P106", ent("Q593644")),
    ("Q7186", "P69", ent("Q209842")),
    ("Q7186", "P569", date("1867-11-07", "7 November 1867")),
    ("Q7186", "P570", date("1934-07-04", "4 July 1934")),
    ("Q37463", "P27", ent("Q142")),
    ("Q37463", "P19", ent("Q90")),
    ("Q37463", "P20", ent("Q90")),
    ("Q37463", "P26", ent("Q7186"), "1906-04-19"),
    ("Q37463", "P106", ent("Q169470")),
    ("Q37463", "P69", ent("Q209842")),
    ("Q37463", "P569", date("1859-05-15", "15 May 1859")),
    ("Q37463", "P570", date("1906-04-19", "19 April 1906")),
    # Einstein
    ("Q937", "P27", ent("Q183"), "1933-03-28"),
    ("Q937", "P27", ent("Q39")),
    ("Q937", "P27", ent("Q30")),
    ("Q937", "P19", ent("Q3012")),
    ("Q937", "P20", ent("Q138518")),
    ("Q937", "P26", ent("Q76346"), "1919-02-14"),
    ("Q937", "P26", ent("Q68761"), "1936-12-20"),
    ("Q937", "P106", ent("Q169470")),
    ("Q937", "P69", ent("Q11942")),
    ("Q937", "P569", date("1879-03-14", "14 March 1879")),
    ("Q937", "P570", date("1955-04-18", "18 April 1955")),
    ("Q76346", "P27", ent("Q39")),
    ("Q76346", "P26", ent("Q937"), "1919-02-14"),
    ("Q76346", "P106", ent("Q170790")),
    ("Q76346", "P69", ent("Q11942")),
    ("Q68761", "P27", ent("Q183")),
    ("Q68761", "P26", ent("Q937"), "1936-12-20"),
    # Herschels
    ("Q14277", "P27", ent("Q145")),
    ("Q14277", "P19", ent("Q1715")),
    ("Q14277", "P20", ent("Q212826")),
    ("Q14277", "P106", ent("Q11063")),
    ("Q14277", "P3373", ent("Q153830")),
    ("Q14277", "P569", date("1738-11-15", "15 November 1738")),
    ("Q14277", "P570", date("1822-08-25", "25 August 1822")),
    ("Q153830", "P27", ent("Q145")),
    ("Q153830", "P19", ent("Q1715")),
    ("Q153830", "P20", ent("Q1715")),
    ("Q153830", "P106", ent("Q11063")),
    ("Q153830", "P3373", ent("Q14277")),
    ("Q153830", "P569", date("1750-03-16", "16 March 1750")),
    ("Q153830", "P570", date("1848-01-09", "9 January 1848")),
    # Lovelace and Halley
    ("Q7259", "P27", ent("Q145")),
    ("Q7259", "P19", ent("Q84")),
    ("Q7259", "P20", ent("Q84")),
    ("Q7259", "P106", ent("Q170790")),
    ("Q7259", "P140", ent("Q6423963")),
    ("Q7259", "P569", date("1815-12-10", "10 December 1815")),
    ("Q7259", "P570", date("1852-11-27", "27 November 1852")),
    ("Q47434", "P27", ent("Q145")),
    ("Q47434", "P19", ent("Q84")),
    ("Q47434", "P20", ent("Q84")),
    ("Q47434", "P106", ent("Q11063")),
    ("Q47434", "P106", ent("Q170790")),
    ("Q47434", "P69", ent("Q34433")),
    ("Q47434", "P569", date("1656-11-08", "8 November 1656")),
    ("Q47434", "P570", date("1742-01-14", "14 January 1742")),
    # heads of state
    ("Q3052772", "P27", ent("Q142")),
    ("Q3052772", "P19", ent("Q90")),
    ("Q3052772", "P69", ent("Q209842")),
    ("Q2105", "P27", ent("Q142")),
    ("Q567", "P27", ent("Q183")),
    ("Q567", "P106", ent("Q169470")),
    ("Q9682", "P27", ent("Q145")),
    ("Q9682", "P19", ent("Q84")),
    ("Q9682", "P140", ent("Q6423963")),
    ("Q9682", "P570", date("2022-09-08", "8 September 2022")),
    ("Q43274", "P27", ent("Q145")),
    ("Q43274", "P19", ent("Q84")),
    ("Q43274", "P140", ent("Q6423963")),
    ("Q3805", "P27", ent("Q38")),
    ("Q3805", "P19", ent("Q220")),
    ("Q11812", "P27", ent("Q36")),
    # countries
    ("Q142", "P36", ent("Q90")),
    ("Q142", "P37", ent("Q150")),
    ("Q142", "P38", ent("Q4916")),
    ("Q142", "P30", ent("Q46")),
    ("Q142", "P47", ent("Q183")),
    ("Q142", "P47", ent("Q39")),
    ("Q142", "P47", ent("Q38")),
    ("Q142", "P35", ent("Q3052772")),
    ("Q142", "P35", ent("Q2105"), "2017-05-14"),
    ("Q142", "P1082", number(68042591)),
    ("Q183", "P36", ent("Q64")),
    ("Q183", "P37", ent("Q188")),
    ("Q183", "P38", ent("Q4916")),
    ("Q183", "P30", ent("Q46")),
    ("Q183", "P47", ent("Q142")),
    ("Q183", "P47", ent("Q36")),
    ("Q183", "P47", ent("Q39")),
    ("Q183", "P47", ent("Q55")),
    ("Q183", "P1082", number(83294633)),
    ("Q36", "P36", ent("Q270")),
    ("Q36", "P37", ent("Q809")),
    ("Q36", "P38", ent("Q123213")),
    ("Q36", "P30", ent("Q46")),
    ("Q36", "P47", ent("Q183")),
    ("Q36", "P35", ent("Q11812"), "2025-08-06"),
    ("Q36", "P1082", number(36753736)),
    ("Q38", "P36", ent("Q220")),
    ("Q38", "P37", ent("Q652")),
    ("Q38", "P38", ent("Q4916")),
    ("Q38", "P30", ent("Q46")),
    ("Q38", "P47", ent("Q142")),
    ("Q38", "P47", ent("Q39")),
    ("Q38", "P35", ent("Q3805")),
    ("Q38", "P1082", number(58850717)),
    ("Q145", "P36", ent("Q84")),
    ("Q145", "P37", ent("Q1860")),
    ("Q145", "P38", ent("Q25224")),
    ("Q145", "P30", ent("Q46")),
    ("Q145", "P35", ent("Q43274")),
    ("Q145", "P35", ent("Q9682"), "2022-09-08"),
    ("Q145", "P1082", number(67596281)),
    ("Q39", "P36", ent("Q70")),
    ("Q39", "P37", ent("Q188")),
    ("Q39", "P37", ent("Q150")),
    ("Q39", "P37", ent("Q652")),
    ("Q39", "P38", ent("Q25344")),
    ("Q39", "P30", ent("Q46")),
    ("Q39", "P47", ent("Q142")),
    ("Q39", "P47", ent("Q183")),
    ("Q39", "P47", ent("Q38")),
    ("Q39", "P1082", number(8902308)),
    ("Q30", "P36", ent("Q61")),
    ("Q30", "P37", ent("Q1860")),
    ("Q30", "P38", ent("Q4917")),
    ("Q30", "P30", ent("Q49")),
    ("Q30", "P1082", number(331449281)),
    ("Q55", "P36", ent("Q727")),
    ("Q55", "P37", ent("Q7411")),
    ("Q55", "P38", ent("Q4916")),
    ("Q55", "P30", ent("Q46")),
    ("Q55", "P47", ent("Q183")),
    ("Q55", "P1082", number(17590672)),
    # cities and universities
    ("Q90", "P17", ent("Q142")),
    ("Q640937", "P17", ent("Q142")),
    ("Q270", "P17", ent("Q36")),
    ("Q220", "P17", ent("Q38")),
    ("Q13375", "P17", ent("Q38")),
    ("Q2044", "P17", ent("Q38")),
    ("Q64", "P17", ent("Q183")),
    ("Q3012", "P17", ent("Q183")),
    ("Q1715", "P17", ent("Q183")),
    ("Q84", "P17", ent("Q145")),
    ("Q212826", "P17", ent("Q145")),
    ("Q1152380", "P17", ent("Q145")),
    ("Q34217", "P17", ent("Q145")),
    ("Q70", "P17", ent("Q39")),
    ("Q138518", "P17", ent("Q30")),
    ("Q61", "P17", ent("Q30")),
    ("Q727", "P17", ent("Q55")),
    ("Q90", "P1082", number(2145906)),
    ("Q270", "P1082", number(1863056)),
    ("Q64", "P1082", number(3755251)),
    ("Q84", "P1082", number(8799800)),
    ("Q209842", "P17", ent("Q142")),
    ("Q35794", "P17", ent("Q145")),
    ("Q645663", "P17", ent("Q38")),
    ("Q11942", "P17", ent("Q39")),
    ("Q34433", "P17", ent("Q145")),
    # sky
    ("Q1136383", "P361", ent("Q321")),
    ("Q1136383", "P61", ent("Q184874")),
    ("Q1136383", "P575", date("1752-01-01", "1752")),
    ("Q1136383", "P59", ent("Q10452")),
    ("Q1136375", "P361", ent("Q321")),
    ("Q1136375", "P61", ent("Q184874")),
    ("Q1136375", "P575", date("1751-01-01", "1751")),
    ("Q1136375", "P59", ent("Q10498")),
    ("Q1136401", "P361", ent("Q321")),
    ("Q1136401", "P61", ent("Q184874")),
    ("Q1136401", "P575", date("1752-01-01", "1752")),
    ("Q1136401", "P59", ent("Q10481")),
    ("Q6395", "P361", ent("Q321")),
    ("Q6395", "P61", ent("Q47434")),
    ("Q6395", "P575", date("1677-01-01", "1677")),
    ("Q6395", "P59", ent("Q8667")),
    ("Q14260", "P361", ent("Q321")),
    ("Q14260", "P61", ent("Q47434")),
    ("Q14260", "P575", date("1714-01-01", "1714")),
    ("Q14260", "P59", ent("Q8679")),
    ("Q321", "P361", ent("Q11019")),
    ("Q544", "P361", ent("Q321")),
    ("Q525", "P361", ent("Q544")),
    ("Q319", "P361", ent("Q544")),
    ("Q319", "P397", ent("Q525")),
    ("Q324", "P361", ent("Q544")),
    ("Q324", "P397", ent("Q525")),
    ("Q324", "P61", ent("Q14277")),
    ("Q324", "P575", date("1781-03-13", "13 March 1781")),
    ("Q3123", "P397", ent("Q319")),
    ("Q3123", "P61", ent("Q307")),
    ("Q3123", "P575", date("1610-01-08", "8 January 1610")),
    ("Q3143", "P397", ent("Q319")),
    ("Q3143", "P61", ent("Q307")),
    ("Q3143", "P575", date("1610-01-08", "8 January 1610")),
    ("Q3169", "P397", ent("Q319")),
    ("Q3169", "P61", ent("Q307")),
    ("Q3169", "P575", date("1610-01-07", "7 January 1610")),
    ("Q3134", "P397", ent("Q319")),
    ("Q3134", "P61", ent("Q307")),
    ("Q3134", "P575", date("1610-01-07", "7 January 1610")),
]

# External identifiers, dropped at ingestion.
VIAF = [("Q935", "27063124"), ("Q307", "100219162"), ("Q937", "75121530")]


def t(tid, prop, text, inverse=False, subject_types=(), object_types=(), source="New"):
    return {
        "id": tid,
        "text": text,
        "property": prop,
        "inverse": inverse,
        "subject_types": list(subject_types),
        "object_types": list(object_types),
        "source": source,
    }


# The NGC 4833 excerpt uses these seven.
EXCERPT_TEMPLATES = [
    t("p361-1", "P361", "{SUBJECT} is part of what astronomical object?", object_types=["Q6999"]),
    t("p361-2", "P361", "Where is {SUBJECT} located?", subject_types=["Q6999"]),
    t("p61-1", "P61", "Who was behind the discovery of {SUBJECT}?", source="ZeroShot"),
    t("p61-2", "P61", "What was the name of the discoverer of {SUBJECT}?", source="SimpleQuestions"),
    t("p61-3", "P61", "Who found {SUBJECT}?"),
    t("p140-1", "P140", "What is {SUBJECT}'s religion?", source="SimpleQuestions"),
    t("p140-2", "P140", "What faith did {SUBJECT} follow?"),
]

TEMPLATES = EXCERPT_TEMPLATES + [
    t("p17-1", "P17", "In which country is {SUBJECT}?", source="SimpleQuestions"),
    t("p17-2", "P17", "Which country is {SUBJECT} located in?"),
    t("p19-1", "P19", "Where was {SUBJECT} born?", source="SimpleQuestions"),
    t("p19-2", "P19", "What is the birthplace of {SUBJECT}?"),
    t("p20-1", "P20", "Where did {SUBJECT} die?", source="ZeroShot"),
    t("p26-1", "P26", "Who is {SUBJECT} married to?"),
    t("p26-2", "P26", "Who is the spouse of {SUBJECT}?", source="SimpleQuestions"),
    t("p27-1", "P27", "What is the nationality of {SUBJECT}?", source="SimpleQuestions"),
    t("p27-2", "P27", "Which country is {SUBJECT} a citizen of?"),
    t("p30-1", "P30", "On which continent is {SUBJECT}?"),
    t("p35-1", "P35", "Who is the head of state of {SUBJECT}?", source="ZeroShot"),
    t("p36-1", "P36", "What is the capital of {SUBJECT}?", source="SimpleQuestions"),
    t("p36-2", "P36", "Which city is the capital of {SUBJECT}?"),
    t("p37-1", "P37", "What language is spoken in {SUBJECT}?", source="SimpleQuestions"),
    t("p37-2", "P37", "What is the official language of {SUBJECT}?"),
    t("p38-1", "P38", "What currency does {SUBJECT} use?"),
    t("p47-1", "P47", "Which country borders {SUBJECT}?"),
    t("p59-1", "P59", "In which constellation is {SUBJECT}?", source="SimpleQuestions"),
    t("p69-1", "P69", "Where did {SUBJECT} study?", source="ZeroShot"),
    t("p69-2", "P69", "Which university did {SUBJECT} attend?"),
    t("p106-1", "P106", "What is the occupation of {SUBJECT}?", source="SimpleQuestions"),
    t("p106-2", "P106", "What does {SUBJECT} do for a living?"),
    t("p397-1", "P397", "What does {SUBJECT} orbit?"),
    t("p569-1", "P569", "When was {SUBJECT} born?"),
    t("p570-1", "P570", "When did {SUBJECT} die?"),
    t("p575-1", "P575", "When was {SUBJECT} discovered?"),
    t("p1082-1", "P1082", "What is the population of {SUBJECT}?"),
    t("p3373-1", "P3373", "Who is the sibling of {SUBJECT}?"),
    # reverse direction
    t("p17r-1", "P17", "Which city is located in {SUBJECT}?", inverse=True, object_types=["Q515"]),
    t("p17r-2", "P17", "Which university is in {SUBJECT}?", inverse=True, object_types=["Q3918"]),
    t("p19r-1", "P19", "Who was born in {SUBJECT}?", inverse=True),
    t("p27r-1", "P27", "Who is a citizen of {SUBJECT}?", inverse=True),
    t("p36r-1", "P36", "{SUBJECT} is the capital of which country?", inverse=True),
    t("p47r-1", "P47", "Which country shares a border with {SUBJECT}?", inverse=True),
    t("p59r-1", "P59", "What can be found in the constellation {SUBJECT}?", inverse=True),
    t("p61r-1", "P61", "What did {SUBJECT} discover?", inverse=True),
    t("p69r-1", "P69", "Who studied at {SUBJECT}?", inverse=True),
    t("p140r-1", "P140", "Who is a follower of {SUBJECT}?", inverse=True),
    t("p361r-1", "P361", "What is part of {SUBJECT}?", inverse=True),
    t("p397r-1", "P397", "What orbits {SUBJECT}?", inverse=True),
]

THEMES = {"person": "Q5", "country": "Q6256", "space object": "Q6999"}

# Accepted rewrites of each kind, plus a demonstrative that repeats its head noun.
SIC_GOLDEN = [
    ("Which location is Switzerland a component of?", "Which location is it a component of?",
     ["Switzerland"], "pronoun"),
    ("What was the cause of death of Uriella?", "What was her cause of death?", ["Uriella"], "pronoun"),
    ("What title was held by Martin of Tours?", "What title was held by him?", ["Martin of Tours"],
     "pronoun"),
    ("Who is in charge of the government of Warsaw?", "Who is in charge of the government there?",
     ["Warsaw"], "pronoun"),
    ("With which country would you associate Gyeonggi Province?",
     "With which country would you associate this province?", ["Gyeonggi Province"], "demonstrative"),
    ("Which reference work outlined Albigensian Crusade?", "Which reference work outlined this conflict?",
     ["Albigensian Crusade"], "demonstrative"),
    ("What is the public holiday associated with Switzerland?", "What is the public holiday?",
     ["Switzerland"], "ellipsis"),
    ("What is the zenith of Eritrea?", "What is the zenith?", ["Eritrea"], "ellipsis"),
    ("In what geographic region is Eurasia located?", "In what geographic region?", ["Eurasia"],
     "ellipsis"),
    ("Which region is Tuscany in?", "which region is this region in?", ["Tuscany"], "none"),
]


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def entity_records(ids=None):
    out = []
    for q, label in CLASSES.items():
        out.append({"kind": "entity", "id": q, "preferred_label": label, "alt_labels": [], "types": []})
    for q, (label, alts, gender, dead, surname) in PERSONS.items():
        r = {"kind": "entity", "id": q, "preferred_label": label, "alt_labels": alts, "types": ["Q5"],
             "gender": gender, "is_dead": dead}
        if surname:
            r["surname"] = surname
        out.append(r)
    for q, (label, alts, types) in THINGS.items():
        out.append({"kind": "entity", "id": q, "preferred_label": label, "alt_labels": alts,
                    "types": types})
    if ids is not None:
        out = [r for r in out if r["id"] in ids]
    return out


def property_records(pids=None):
    out = [{"kind": "property", "id": p, "label": l} for p, l in PROPERTIES.items()]
    out += [{"kind": "property", "id": p, "label": l, "datatype": "external-id"}
            for p, l in EXTERNAL_ID_PROPERTIES.items()]
    if pids is not None:
        out = [r for r in out if r["id"] in pids]
    return out


def triple_record(fact):
    s, p, o = fact[:3]
    quals = {"end_time": fact[3]} if len(fact) > 3 else {}
    return {"kind": "triple", "s": s, "p": p, "inverse": False, "o": o, "qualifiers": quals}


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "data")
    out.mkdir(parents=True, exist_ok=True)

    triples = [triple_record(f) for f in FACTS]
    triples += [triple_record((s, "P214", {"literal": {"kind": "string", "value": v, "label": v}}))
                for s, v in VIAF]
    write_jsonl(out / "mini_kg.jsonl", property_records() + entity_records() + triples)
    write_jsonl(out / "templates.jsonl", TEMPLATES)
    with open(out / "config.json", "w", encoding="utf-8") as f:
        json.dump({"kg": "mini_kg.jsonl", "templates": "templates.jsonl", "seed": 42, "per_root": 3,
                   "themes": THEMES, "split": [0.66, 0.10, 0.24]}, f, indent=2)
        f.write("\n")

    # The three-turn excerpt: NGC 4833 -> Milky Way, Lacaille, Catholic Church.
    excerpt = [f for f in FACTS if f[0] == "Q1136383" and f[1] in ("P361", "P61")]
    excerpt += [f for f in FACTS if f[0] == "Q184874" and f[1] == "P140"]
    ids = {"Q1136383", "Q321", "Q184874", "Q9592", "Q11276", "Q6999", "Q318", "Q5", "Q9174"}
    write_jsonl(out / "ngc4833_kg.jsonl",
                property_records({"P361", "P61", "P140"}) + entity_records(ids)
                + [triple_record(f) for f in excerpt])
    write_jsonl(out / "ngc4833_templates.jsonl", EXCERPT_TEMPLATES)

    write_jsonl(out / "sic_golden.jsonl",
                [{"original": o, "candidate": c, "history": h, "category": k}
                 for o, c, h, k in SIC_GOLDEN])


if __name__ == "__main__":
    main()
