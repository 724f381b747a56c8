"""
hpzo test suite.
Fast unit and property tests run by default; the full statistical
instantiations in test_acceptance.py run only with HPZO_RUN_ACCEPTANCE=1.
"""
