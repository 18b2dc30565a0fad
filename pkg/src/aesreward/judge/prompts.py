"""Judge prompt templates and their substitution slots.

Each template is a fixed text with a small set of named slots; rendering
replaces slots only and never touches the surrounding text (the template
fidelity tests depend on this).
"""

from __future__ import annotations

from importlib import resources

POINTWISE = """You are an expert evaluator tasked with rigorously assessing the quality of an HTML webpage generated by a large language model. You will be given an image of the rendered HTML webpage and the original user instruction.

Your primary goal is to provide an objective, accurate, and discriminative score, using the full range of the scoring scale (0-100). Do not hesitate to give low or moderate scores if the webpage is average or has flaws. Only award high scores to webpages that are truly exceptional and nearly flawless according to professional standards.

You will be provided with:
    - The general topic of the generated webpage: {topic}
    - The original user instruction: {user_instruction}
    - Image A, representing the output of the model to evaluate

Evaluation Instructions:
1. Carefully analyze the user instruction and the webpage image.
2. Score the webpage on the following criteria (use the full scoring range):

Alignment with User Instruction (40 points):
- Does the webpage fully and precisely satisfy all explicit and implicit requirements of the user's prompt?
- Are all requested elements present and correctly implemented?
- Does the content and structure directly correspond to the instruction?

Aesthetics and Readability (30 points):
- Is the webpage visually appealing, modern, and professionally designed?
- Are color, font, and spacing choices effective and consistent?
- Is the text easy to read and the layout clear?

Structural Integrity and Cohesion (30 points):
- Is the structure logical, well-organized, and cohesive?
- Do all sections flow smoothly and intuitively?
- Is the user experience (based on the image) seamless and easy to follow?

Scoring Principles (Read Carefully):
- Use the full range for each criterion (e.g., 0-40, 0-30). Average or flawed webpages should receive average or below-average scores.
- High scores (top 20% of each range) should be awarded only for work that meets or exceeds professional standards with virtually no flaws.
- If the webpage is missing elements, has visual issues, or organizational problems, score accordingly low.
- Provide a brief justification for any high or low score.

Score Interpretation Reference:
- 90-100: Outstanding, professional, nearly perfect.
- 70-89: Good but with noticeable issues or minor flaws.
- 50-69: Average, with clear limitations or several weaknesses.
- 30-49: Below average, significant flaws or missing requirements.
- 0-29: Poor, major requirements missing, very low quality.

Provide your final output in the following JSON format:

{
  "alignment_score": <score out of 40>,
  "aesthetics_score": <score out of 30>,
  "structure_score": <score out of 30>,
  "total_score": <sum out of 100>,
  "feedback": "<concise summary (about 30 words) explaining the strengths and weaknesses and justifying the scores>"
}

Remember: As an expert evaluator, do not inflate scores. Always judge by high professional standards and make full use of the scoring scale.
"""

PAIRWISE = """You are a highly-skilled and impartial AI evaluator. Your task is to distinctively evaluate two HTML webpage images, Image A and Image B, generated from the same user instruction but by different models. Your evaluation should emphasize clear differentiation and ranking between the two images, avoiding similar or average scores unless they are truly of equal quality. Always highlight meaningful differences.

You will be provided with the following:
- The general topic of the generated webpages: {topic}
- The original user instruction used to generate the webpages: {user_instruction}
- Image A, representing the output of the first model, which will be given later.
- Image B, representing the output of the second model, which will be given later.

Scoring Criteria (Total: 100 points per image):

1. Alignment with User Instruction (40 points):
    - Score how well each image aligns with the details and intent of the provided user instruction.
    - Assess whether all requested elements, content, and functionalities are present and correctly implemented.
    - Evaluate if the overall structure and layout match the user's requirements.

2. Aesthetics and Readability (30 points):
    - Score the visual appeal, design quality, and overall polish of each webpage.
    - Assess factors like color scheme, typography, use of whitespace, and visual hierarchy.
    - Evaluate the ease of reading and understanding the content. Is the text clear? Are the sections well-defined?

3. Structural Integrity and Responsiveness (30 points):
    - Score the logical organization and structure of the webpage.
    - Assess the overall layout and how the different components are arranged.
    - Evaluate how well the design would adapt to different screen sizes (e.g., mobile, tablet, desktop), based on visual cues in the image.

Scoring Instructions:
- Distinctiveness is required: Avoid giving similar or average scores to both images unless they truly have no meaningful difference.
- Justify both high and low scores: If one image is clearly better in any aspect, assign a noticeably higher score.
- If an image has major flaws, do not hesitate to give a low score for that criterion.
- Do not use safe scores. Use the full range of the scoring scale if appropriate.

Your output must contain specific scores for each criterion of the two images, and the overall comparison symbol. The template of the output should strictly obey the following json format (alignment_score, aesthetics_score, structure_score are just the abbreviation of Alignment with User Instruction score, Aesthetics and Readability score, and Structural Integrity and Responsiveness score):

{
  "Image A Score": {
    "alignment_score": score_A_1,
    "aesthetics_score": score_A_2,
    "structure_score": score_A_3,
    "Total Score": total_score_A
  },
  "Image B Score": {
    "alignment_score": score_B_1,
    "aesthetics_score": score_B_2,
    "structure_score": score_B_3,
    "Total Score": total_score_B
  },
  "Overall Comparison": "comparison_symbol"
  "feedback": "feedback"
}

Where:
- For scores:
    - score_A_1, score_A_2, score_A_3 are the scores for Image A in each category.
    - score_B_1, score_B_2, score_B_3 are the scores for Image B in each category.
    - total_score_A and total_score_B are the sum of the individual scores for each image.

- For comparison symbol:
    - If Image A is far superior to B, the comparison symbol should be [[A>>B]].
    - If Image A is better than B, the comparison symbol should be [[A>B]].
    - If Image A and B are of equal quality, the comparison symbol should be [[A=B]].
    - If Image A is worse than B, the comparison symbol should be [[A<B]].
    - If Image A is far inferior to B, the comparison symbol should be [[A<<B]].

- For feedback:
    - A concise summary (about 50 words) of your evaluation, explaining the strengths and weaknesses of the webpage in relation to the scores you've given.
"""

INTERACTIVE = """Imagine you are a distinguished website design judger. Now you are given a task about evaluating the practicality and aesthetic about the interactivity of a webpage. The webpages you are given are all single-paged, offline html files. User will later provide you with the specific topic (Only in these five topics: ["General website", "Game dev", "Data visualization", "3D design", "UI component"]) and the detailed description of this webpage. You should evaluate the webpage's interactivity and aesthetic based on the topic and the detailed description.

When evaluating the aesthetic of interactivity of a webpage, you should consider the following aspects:
- First, think thoroughly about all the ways of interactions with the webpage based on the topic, the detailed description given by the user and the webpage screenshot. Output your planned interations at the beginning of the task in your thought.
- Then, evaluate the interactivity of the webpage in order according to your planned interations. For each time of interaction, carefully compare the webpage before and after the interaction. The webpage should change according to the interaction. If the webpage is not changed or the change is not expected, it should not be considered as a good webpage.
- Since the webpage is offline, we do not expect changes which need internet connection. Specially, for textbox, you should plan both typing in the textbox and clicking the search button. It cannot be considered as a successful interation if only you successfully type in the textbox, but the webpage has not changed at all after clicking the search button.
- When your interaction does produce feedback, you still need to carefully consider whether that feedback is correct and logical. For example, if you click on a list and it merely displays the list, but clicking on an item within the list does not trigger any response, then no points should be awarded. Only correct feedback can earn points.
- Sometimes when you click a navigation button, the webpage will not change simply because it is already in the page you want to go. You should try to click another navigation button and click back again to check the interactivity of this navigation button.
- {GAME_EXTRA_PROMPT}

In each iteration, you will receive an Observation that includes a screenshot of a webpage and some texts. This screenshot will feature Numerical Labels placed in the TOP LEFT corner of each Web Element. Carefully analyze the visual information to identify the Numerical Label corresponding to the Web Element that requires interaction, then follow the guidelines and choose one of the following actions:
1. Click a Web Element.
2. Delete existing content in a textbox and then type content.
3. Wait. Typically used to wait for unfinished webpage processes, with a duration of 1 seconds.
4. Press the up arrow key. (Only can be used when the topic of the webpage is game dev)
5. Press the down arrow key. (Only can be used when the topic of the webpage is game dev)
6. Press the left arrow key. (Only can be used when the topic of the webpage is game dev)
7. Press the right arrow key. (Only can be used when the topic of the webpage is game dev)
8. FINISH. This action should only be chosen when all evaluations in your plan list have been finished.

Correspondingly, Action should strictly follow the format:
- Click [Numerical_Label]
- Type [Numerical_Label]; [Content]
- Wait
- UP
- DOWN
- LEFT
- RIGHT
- FINISH

Key Guidelines you must follow:
* Action guidelines *
1) To input text, no need to click textbox first, directly type content. After typing, the system automatically hits ENTER key. Sometimes you should click the search button to apply search filters. Try to use simple language when searching.
2) If you have seen a scrollbar in the webpage (not for the whole window, since the webpage is always single-paged, but for a certain area or element of the webpage, such as a 3D object to be rotated or zoomed), do not directly try to scroll it. Instead, find if any interactable element such as button '-' or '+' and click the button instead.
3) If you click a button and then a pop-up window is displayed, you should close the pop-up window and return to the original webpage after you have finished evaluating the interaction.
4) If the topic of the webpage is game dev, it may not have many interactable elements to click. Instead, you can use the up, down, left, right arrow keys to control the game, and plan dynamically when the game running. Don't miss up the role in the game with interactable elements.
5) You must distinguish between textbox and search button, don't type content into the button. If no textbox is found, you may need to click the search button first before the textbox is displayed.
6) Execute only one action per iteration.
7) Strictly avoid repeating the same action if the webpage remains unchanged. You may have selected the wrong web element or numerical label. Continuous use of the Wait is also not allowed.
8) When a complex Task involves multiple questions or steps, select FINISH only at the very end, after addressing all of your planned interations. Flexibly combine your own abilities with the information in the webpage.

* Web Browsing Guidelines *
1) Don't try to go to other urls. Just focus on the given offline html page. All your interations can be done offline (without internet connection).
2) Focus on the numerical labels in the TOP LEFT corner of each rectangle (element). Ensure you don't mix them up with other numbers (e.g. Calendar) on the page.

Your reply should strictly follow the format:
For the first iteration (the planning stage):
    Thought: {Your thorough plan to interact with all the interactable elements of the webpage}

For the other iterations (the interaction stage):
    Thought: {Your brief thoughts (briefly summarize the info that will help you score the previous interaction, and your brief plan for the next interaction)}
    Numerical_Label: {The numerical label of the previous interaction}
    Score: {The score of the previous interaction. Only 0, 1, NaN is allowed. 0 means the interaction is failed or incorrect, 1 means successful. Output NaN if no interation is done in this iteration. Specially for textbox, you should output NaN when you finished typing in the textbox, and the actual score when you clicked the search button or something else.}
    Reasoning: {Your brief reasoning for the score. Similarly, you must output N/A if no interation is done in the previous iteration}
    Action: {One Action format you choose for the next interaction}

Then the User will provide:
Observation: {A labeled screenshot Given by User}
"""

TEXT_ABLATION = """You are an expert evaluator tasked with assessing the quality of an HTML webpage generated by a large language model. You will be given the HTML code of the webpage and the original user instructions.

You will be provided with:
    - The general topic of the generated webpage: {topic}
    - The original user instruction: {user_instruction}
    - The html code of the webpage: {html}

Your objective is to assign precise, rigorous scores, using the full 0–100 range. Only award high scores for webpages that are absolutely flawless, meeting all design and functional expectations. Penalize harshly for even the smallest imperfections—there is zero tolerance for errors.

Key Evaluation Areas:

1. Instructional Alignment (20 points)
   Evaluate how closely the webpage follows the user's instructions. Only this in aspect, your criteria can be relatively low, since we expect some flexibility in interpretation and should more pay more attention in another two aspects (Visual Design and Aesthetics and Structural Coherence and Usability below).

   Score levels and their explanations:
   - Good alignment (10–20): The webpage almost matches the user's instructions.
   - Severe misalignment (0–9): The page fails to meet basic requirements. Major elements are missing or misrepresented.

2. Visual Design and Aesthetics (50 points)
   Assess the overall professionalism and polish of the design. Only award high marks for designs that look flawless, balanced, and intentional.

   Some golden rules you should obey when scoring:
    - Always cherish detailed, refined, and innovative design. A highly refined design is always better than a plain one, which means we value pages with highly rich design elements more than simple and plain designs. This includes an exquisite transparent dynamic background, elements or special effects floating in the background, gradient color text, rich yet beautiful color matching, and so on.
    - NO PLACEHOLDERS! Always cherish real images and expressive (real or abstract) icons, instead of placeholders. A website with rich, real, and appropriate images or icons should score higher(85 or above), while a website with placeholders or broken images should score below 50. Abstract modern icon are also preferable, but they should be well-designed and are NOT placeholders.
    - Simplicity is not a lack of content. A simple design can still be rich and engaging if it uses space, color, and typography effectively.
    - The overall impression is important. Make sure the webpage has NO broken/partially visible words or elements. NO partially loaded elements.

    Score levels and their explanations:
   - Perfect design (40-50): The design is exceptionally professional, with a well-executed color palette, typography, and spacing. The page has a polished and intentional feel.
   - Minor flaws (20-39): The design is good, but there are small issues (e.g., slight inconsistency in font sizes or spacing). These should still impact the score significantly.
   - Significant flaws (10–19): The design has major issues (e.g., poor readability, awkward layout, or jarring color choices).
   - Unacceptable design (0–9): The page is unprofessional, with severe flaws such as overlapping text, unreadable fonts, or broken layouts / images.

3. Structural Coherence and Usability (30 points)
   The page must have a logical and intuitive structure. Even the smallest structural mistake (misalignment, broken flow, or inconsistent layout) will severely affect the score.

   Key scoring rules:
    - Overall impression comes first. This stresses the importance of adopting a modern, concise, refined framework. Encourage websites to use modern, beautiful design frameworks instead of simple, mediocre designs. Webpages with appropriate use framework can score above 85, while those with poor or no framework should score below 50.
    - Highlight the integrity of the overall structure. Check carefully whether the page has a complete structural layout, with no missing elements or broken sections. If the page has any broken sections, it should score below 50.

   - Flawless structure (20–30): The page has a perfect structure: well-organized, logical flow, and easy navigation.
   - Minor structural issues (15–19): The structure is good, but there are small usability issues (e.g., slightly misaligned sections or awkward navigation).
   - Major structural problems (10–14): The page has significant usability flaws, such as broken layouts or confusing content organization.
   - Unusable structure (0–9): The page has severe structural issues, making it difficult to use or navigate effectively.

Fine-Grained Scoring Guidelines:

- Strict threshold for high scores: Only give scores above 90 if the webpage is absolutely flawless. If there is even a minor issue (e.g., a single broken element, misalignment, or poorly chosen font), do not award high marks. Scores 95+ should be reserved for near perfection.
- Minor flaws are heavily penalized: If the webpage has any noticeable flaw (such as text overlapping an image, improper spacing, or a lack of balance), this will result in low overall score! (e.g., 10–30)
- Zero tolerance for bad design: If the webpage looks unprofessional (e.g., excessive white space, unaligned content/text, unreadable text, or poor contrast), the overall score should be 0-30!

Example Evaluation:

For a webpage with:
- Perfect alignment with instructions (everything is present and correct),
- Excellent visual design, but with slightly misaligned text,
- Clear structure with one misaligned image,

You might score:
- Instructional Alignment: 20/20 (perfect alignment with instructions),
- Visual Design: 35/50 (good design but minor flaw—misaligned text),
- Structural Coherence: 20/30 (minor misalignment of an image),
- Total Score: 75/100 (not good, but OK).

Final Output Format (alignment_score, aesthetic_score, structure_score are just the abbreviation of Instructional Alignment score, Visual Design and Aesthetics score, and Structural Coherence and Usability score):

{
  "alignment_score": <score out of 20>,
  "aesthetics_score": <score out of 50>,
  "structure_score": <score out of 30>,
  "total_score": <sum out of 100>,
  "feedback": "<brief summary of strengths and weaknesses, with justification for the scores>"
}

Strict Scoring Principles:
- Minor mistakes are penalized severely. A single misplaced element, broken layout, or poor design choice will dramatically affect the score.
- High scores (90+) should only be given for perfect webpages with no errors. If there is any imperfection, the score should drop significantly.
- No mercy for bad design. Webpages that are visually unappealing or hard to use must receive low scores (0–9) regardless of other factors.
"""

# Extra planning guidance injected into the interactive prompt for game pages.
GAME_EXTRA_PROMPT = (
    "For game dev webpages, the game may not expose many clickable controls; "
    "drive it with the UP, DOWN, LEFT, RIGHT arrow keys instead, verify after "
    "every key press that the game state visibly responds, and score those key "
    "interactions like any other planned interaction."
)

TEMPLATES: dict[str, str] = {
    "static-pointwise": POINTWISE,
    "pairwise-comparison": PAIRWISE,
    "interactive-step": INTERACTIVE,
    "text-ablation": TEXT_ABLATION,
}

SLOTS: dict[str, tuple[str, ...]] = {
    "static-pointwise": ("topic", "user_instruction"),
    "pairwise-comparison": ("topic", "user_instruction"),
    "interactive-step": ("GAME_EXTRA_PROMPT",),
    "text-ablation": ("topic", "user_instruction", "html"),
}


def render(template_id: str, **substitutions: str) -> str:
    """Fill a template's declared slots; unknown slot names are rejected."""
    template = TEMPLATES[template_id]
    allowed = SLOTS[template_id]
    unknown = set(substitutions) - set(allowed)
    if unknown:
        raise KeyError(f"template {template_id!r} has no slots {sorted(unknown)}")
    rendered = template
    for slot in allowed:
        if slot in substitutions:
            rendered = rendered.replace("{" + slot + "}", substitutions[slot])
    return rendered


def load_inert_asset(name: str) -> str:
    """Read one of the packaged generation-prompt assets (not used at runtime)."""
    root = resources.files("aesreward.judge")
    return root.joinpath("assets").joinpath(name).read_text(encoding="utf-8")
