"""
Сервисы: арифметика полей, группы, полупространство, обе стороны формулы следа.
"""
